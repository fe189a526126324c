"""Lattice combinatorics engine."""
