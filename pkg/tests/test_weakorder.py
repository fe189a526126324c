import itertools
import math

import pytest
from hypothesis import given, strategies as st

from latticeforge.binarytree import BinaryTree, enumerate_trees
from latticeforge.weakorder import (
    avoids,
    class_maximum,
    class_minimum,
    contains_pattern,
    from_inversions,
    identity,
    inversions,
    is_inversion_set,
    longest,
    perm,
    permutations,
    sylvester_class,
    sylvester_insert,
    weak_covers,
    weak_join,
    weak_le,
    weak_meet,
)


def perms_of(max_n):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(perm)


def pairs_of(max_n):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))
    ).map(lambda pq: (perm(pq[0]), perm(pq[1])))


class TestInversions:
    def test_value_inversions(self):
        assert inversions("2314") == {(1, 2), (1, 3)}
        assert inversions("1234") == frozenset()
        assert inversions("321") == {(1, 2), (1, 3), (2, 3)}

    def test_non_transitive_set_rejected(self):
        assert not is_inversion_set({(1, 2), (1, 3), (2, 3), (2, 4)}, 4)
        assert is_inversion_set(set(), 3)
        assert is_inversion_set({(1, 2), (1, 3), (2, 3)}, 3)

    def test_from_inversions_examples(self):
        assert from_inversions({(1, 2), (1, 3)}, 4) == perm("2314")
        assert from_inversions(set(), 5) == identity(5)
        assert from_inversions({(1, 2), (1, 3), (2, 3)}, 3) == longest(3)

    def test_from_inversions_rejects_invalid(self):
        with pytest.raises(ValueError):
            from_inversions({(1, 2), (2, 3)}, 3)
        with pytest.raises(ValueError):
            from_inversions({(0, 2)}, 3)

    @given(perms_of(7))
    def test_round_trip(self, p):
        assert from_inversions(inversions(p), p.n) == p

    def test_inversion_sets_are_exactly_the_valid_sets(self):
        n = 4
        pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        valid = {
            frozenset(c)
            for k in range(len(pairs) + 1)
            for c in itertools.combinations(pairs, k)
            if is_inversion_set(c, n)
        }
        assert valid == {inversions(p) for p in permutations(n)}


class TestWeakOrder:
    def test_comparisons(self):
        assert weak_le("2314", "2431")
        assert weak_le("3142", "3142")
        assert not weak_le("3142", "3214")

    def test_meet_join_example(self):
        assert weak_meet("3214", "3142") == perm("3124")
        assert weak_join("3214", "3142") == perm("3421")

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            weak_le("12", "123")

    @given(pairs_of(6))
    def test_bounds(self, pq):
        p, q = pq
        j, m = weak_join(p, q), weak_meet(p, q)
        assert weak_le(p, j) and weak_le(q, j)
        assert weak_le(m, p) and weak_le(m, q)
        assert weak_join(p, p) == p
        assert weak_join(identity(p.n), p) == p

    def test_lattice_bounds_exhaustive(self):
        elems = list(permutations(4))
        for p in elems:
            for q in elems:
                ups = [z for z in elems if weak_le(p, z) and weak_le(q, z)]
                lows = [z for z in elems if weak_le(z, p) and weak_le(z, q)]
                assert all(weak_le(weak_join(p, q), z) for z in ups)
                assert all(weak_le(z, weak_meet(p, q)) for z in lows)

    @given(perms_of(6))
    def test_covers_add_one_inversion(self, p):
        for q in weak_covers(p):
            assert len(q.inversion_set - p.inversion_set) == 1
            assert p.inversion_set < q.inversion_set


class TestSylvester:
    def test_insertion_example(self):
        # in-order labels: root 4, left child 2 over 1 and 3, right child 5
        b = BinaryTree
        assert sylvester_insert("13524") == b(b(b(), b()), b())

    def test_chains(self):
        t = sylvester_insert("123")
        assert t.right is None and t.left.right is None
        t = sylvester_insert("321")
        assert t.left is None and t.right.left is None

    def test_class_of_example_tree(self):
        cls = sylvester_class(sylvester_insert("13524"))
        assert {"13254", "31254", "13524", "31524", "15324", "35124", "51324", "53124"} <= {str(p) for p in cls}
        assert len(cls) == 8

    @pytest.mark.parametrize("n", range(1, 7))
    def test_classes_partition(self, n):
        total = 0
        for t in enumerate_trees(n):
            cls = sylvester_class(t)
            assert all(sylvester_insert(p) == t for p in cls)
            assert class_minimum(t) in cls and class_maximum(t) in cls
            assert all(weak_le(class_minimum(t), p) and weak_le(p, class_maximum(t)) for p in cls)
            total += len(cls)
        assert total == math.factorial(n)

    def test_extremes_avoid_patterns(self):
        for t in enumerate_trees(5):
            assert avoids(class_minimum(t), "312")
            assert avoids(class_maximum(t), "132")


class TestPatterns:
    def test_examples(self):
        assert contains_pattern("4213", "312")
        assert not contains_pattern("123", "21")

    def test_catalan_avoiders(self):
        assert sum(avoids(p, "312") for p in permutations(4)) == 14

    def test_pattern_too_long(self):
        with pytest.raises(ValueError):
            contains_pattern("12", "123")
