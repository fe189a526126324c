import math

import pytest
from hypothesis import given, settings, strategies as st

from latticeforge.binarytree import parent_map
from latticeforge.permutrees import (
    Permutree,
    all_decorations,
    all_permutrees,
    apply_word,
    automaton_accepts,
    check_decoration,
    class_equiv,
    class_maximum,
    class_minimum,
    congruence_class,
    coordinates,
    count,
    count_by_classes,
    count_minimal,
    down_automaton_accepts,
    insert,
    is_minimal,
    linear_extensions,
    minimal_by_automata,
    minimal_set_by_automata,
    permutree_covers,
    permutree_join,
    permutree_le,
    permutree_lower_covers,
    permutree_meet,
    reduced_words,
    rotate,
)
from latticeforge.tamari import loday_coordinates
from latticeforge.weakorder import identity, perm, permutations, sylvester_insert, weak_le

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def decorated_perms(max_n):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.permutations(range(1, n + 1)).map(perm), st.text("NDUB", min_size=n, max_size=n))
    )


class TestDecorations:
    def test_check(self):
        assert check_decoration("ndub") == "NDUB"
        with pytest.raises(ValueError):
            check_decoration("NX")

    def test_all(self):
        assert sum(1 for _ in all_decorations(3)) == 64


class TestInsertion:
    def test_none_gives_a_chain(self):
        t = insert("3142", "NNNN")
        assert t.edges == {(3, 1), (1, 4), (4, 2)}
        assert [str(p) for p in linear_extensions(t)] == ["3142"]

    @pytest.mark.parametrize("n", range(1, 7))
    def test_down_gives_binary_search_trees(self, n):
        for p in permutations(n):
            bst = frozenset((c, par) for c, (par, _) in parent_map(sylvester_insert(p)).items())
            assert insert(p, "D" * n).edges == bst

    @pytest.mark.parametrize("n", range(1, 6))
    def test_updown_gives_recoil_classes(self, n):
        def recoils(p):
            return tuple(p.inverse[i] > p.inverse[i + 1] for i in range(n - 1))

        classes = {}
        for p in permutations(n):
            classes.setdefault(insert(p, "B" * n).edges, set()).add(recoils(p))
        assert all(len(v) == 1 for v in classes.values())
        assert len(classes) == 2 ** (n - 1)

    def test_example_tree(self):
        t = insert("2751346", "DUNBNDU")
        assert t.edges == {(2, 1), (2, 3), (3, 4), (4, 6), (5, 4), (7, 6)}
        assert isinstance(t, Permutree) and t.n == 7
        assert t.to_json()["nodes"]["4"] == {"left_child": 3, "right_parent": 6, "right_child": 5}

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            insert("12", "NNN")


class TestCongruence:
    def test_example_equivalence(self):
        assert class_equiv("7251346", "2751346", "DUNBNDU")

    @pytest.mark.parametrize("n", range(1, 5))
    def test_fibers_are_classes(self, n):
        for delta in all_decorations(n):
            for t in all_permutrees(delta):
                ext = set(linear_extensions(t))
                p = next(iter(ext))
                assert congruence_class(p, delta) == ext
                assert all(insert(q, delta) == t for q in ext)
                assert class_minimum(t) in ext and class_maximum(t) in ext
                assert all(weak_le(class_minimum(t), q) and weak_le(q, class_maximum(t)) for q in ext)
                assert [q for q in ext if is_minimal(q, delta)] == [class_minimum(t)]

    def test_minimality_examples(self):
        assert not is_minimal("2413", "NUNN")
        for delta in all_decorations(3):
            assert is_minimal(identity(3), delta)


class TestCounting:
    def test_example_counts(self):
        assert count("NNDN") == 18
        assert count("NBUN") == 10

    @pytest.mark.parametrize("n", range(1, 6))
    def test_specializations(self, n):
        assert count("N" * n) == math.factorial(n)
        assert count("D" * n) == CATALAN[n]
        assert count("U" * n) == CATALAN[n]
        assert count("B" * n) == 2 ** (n - 1)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_recursion_matches_classes(self, n):
        for delta in all_decorations(n):
            assert count(delta) == count_by_classes(delta) == count_minimal(delta)


class TestLattice:
    def test_example_lattice(self):
        elems = all_permutrees("NNDN")
        assert len(elems) == 18
        for a in elems:
            for b in elems:
                ups = [z for z in elems if permutree_le(a, z) and permutree_le(b, z)]
                lows = [z for z in elems if permutree_le(z, a) and permutree_le(z, b)]
                j, m = permutree_join(a, b), permutree_meet(a, b)
                assert j in ups and all(permutree_le(j, z) for z in ups)
                assert m in lows and all(permutree_le(z, m) for z in lows)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_quotient_map_is_order_preserving(self, n):
        for delta in all_decorations(n):
            for p in permutations(n):
                tp = insert(p, delta)
                for q in permutations(n):
                    if weak_le(p, q):
                        assert permutree_le(tp, insert(q, delta))

    @settings(deadline=None, max_examples=60)
    @given(decorated_perms(5))
    def test_covers_and_rotations(self, pd):
        p, delta = pd
        t = insert(p, delta)
        ups, downs = permutree_covers(t), permutree_lower_covers(t)
        assert len(ups) + len(downs) == t.n - 1
        rotated = {rotate(t, e) for e in t.edges}
        assert rotated == set(ups) | set(downs)


class TestCoordinates:
    def test_example(self):
        assert coordinates(insert("2751346", "DUNBNDU")) == (7, -4, 3, 8, 1, 12, 1)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_down_gives_loday(self, n):
        for p in permutations(n):
            assert coordinates(insert(p, "D" * n)) == loday_coordinates(sylvester_insert(p))

    @given(decorated_perms(6))
    def test_hyperplane(self, pd):
        p, delta = pd
        assert sum(coordinates(insert(p, delta))) == p.n * (p.n + 1) // 2

    @pytest.mark.parametrize("n", range(1, 5))
    def test_distinct_vertices(self, n):
        for delta in all_decorations(n):
            coords = [coordinates(t) for t in all_permutrees(delta)]
            assert len(set(coords)) == len(coords)


class TestAutomata:
    def test_reduced_words(self):
        assert reduced_words("321") == {(1, 2, 1), (2, 1, 2)}
        assert reduced_words(identity(3)) == {()}
        assert apply_word([2, 1, 3], 4) == perm("3142")

    def test_up_automaton(self):
        assert automaton_accepts([2, 1, 3], 2, 4)
        assert not automaton_accepts([1, 2], 2, 4)
        assert not automaton_accepts([2, 1, 2, 3], 2, 4)
        assert automaton_accepts([], 2, 4)
        assert down_automaton_accepts([], 2, 4)

    def test_bad_generator(self):
        with pytest.raises(ValueError):
            automaton_accepts([4], 2, 4)

    def test_minimality_examples(self):
        assert minimal_by_automata("3142", "NUNN")
        assert not minimal_by_automata("3241", "NUNN")

    @pytest.mark.parametrize("n", range(1, 5))
    def test_agrees_with_patterns(self, n):
        for delta in all_decorations(n):
            expected = {p for p in permutations(n) if is_minimal(p, delta)}
            assert minimal_set_by_automata(delta) == expected
            assert {p for p in permutations(n) if minimal_by_automata(p, delta)} == expected
