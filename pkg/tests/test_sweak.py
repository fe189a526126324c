import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from latticeforge import weakorder as wo
from latticeforge.sweak import (
    STree,
    all_pure_intervals,
    apply_ascent,
    check_s,
    count,
    enumerate_trees,
    from_inversions,
    from_nested,
    interval_elements,
    is_planar,
    is_s_tamari,
    is_transitive,
    is_tree_inversion_set,
    max_tree,
    min_tree,
    mirror,
    multiset_from_json,
    multiset_to_json,
    nu_of,
    pure_intersect,
    s_covers,
    s_join,
    s_meet,
    s_tamari_to_nu_path,
    s_tamari_trees,
    s_weak_le,
    tamari_projection,
    tree_ascents,
    tree_inversions,
)
from latticeforge.tamari import NuPath, enumerate_nu_paths, nu_tamari_covers

EXAMPLE_S = (0, 0, 2, 1, 3)
EXAMPLE = from_nested([5, [4, None, None], None, [3, None, None, [2, [1, None]]], None], EXAMPLE_S)
SMALL_S = [(1, 1), (2, 1), (0, 2, 3), (1, 1, 1), (1, 2, 1), (0, 2, 2), (2, 0, 1), (0, 0, 2, 1)]

small_s = st.lists(st.integers(0, 2), min_size=1, max_size=4).filter(lambda s: count(s) <= 200)
trees = small_s.flatmap(lambda s: st.sampled_from(list(enumerate_trees(s))))


class TestTrees:
    def test_example_inversions(self):
        assert tree_inversions(EXAMPLE) == {
            (2, 1): 0, (3, 1): 2, (3, 2): 2, (4, 1): 1, (4, 2): 1,
            (4, 3): 1, (5, 1): 2, (5, 2): 2, (5, 3): 2, (5, 4): 0,
        }  # fmt: skip

    def test_example_ascents(self):
        assert tree_ascents(EXAMPLE) == [(1, 5), (2, 5), (4, 5)]

    def test_nested_round_trip(self):
        assert from_nested(str(EXAMPLE), EXAMPLE_S) == EXAMPLE

    @pytest.mark.parametrize("s,value", [((1, 1, 1), 6), ((0, 2, 3), 24), ((2, 2, 2), 15), ((3,), 1)])
    def test_counts(self, s, value):
        assert count(s) == value == sum(1 for _ in enumerate_trees(s))

    def test_invalid(self):
        with pytest.raises(ValueError):
            check_s([1, -1])
        with pytest.raises(ValueError):
            STree((1, 1), ((0, 0), (0, 0)))
        with pytest.raises(ValueError):
            from_nested([2, [2, None, None], None], (1, 1))

    @settings(deadline=None)
    @given(trees)
    def test_inversion_round_trip(self, t):
        m = tree_inversions(t)
        assert is_transitive(m, t.n) and is_planar(m, t.s) and is_tree_inversion_set(m, t.s)
        assert from_inversions(m, t.s) == t
        assert multiset_from_json(multiset_to_json(m)) == m

    @pytest.mark.parametrize("s", SMALL_S)
    def test_inversion_sets_are_exactly_the_valid_multisets(self, s):
        n = len(s)
        keys = [(b, a) for b in range(2, n + 1) for a in range(1, b)]
        valid = [
            dict(zip(keys, cards))
            for cards in itertools.product(*(range(s[b - 1] + 1) for b, _ in keys))
            if is_tree_inversion_set(dict(zip(keys, cards)), s)
        ]
        assert len(valid) == count(s)
        assert {tuple(sorted(m.items())) for m in valid} == {
            tuple(sorted(tree_inversions(t).items())) for t in enumerate_trees(s)
        }

    def test_non_tree_multiset_rejected(self):
        with pytest.raises(ValueError):
            from_inversions({(2, 1): 0, (3, 1): 1, (3, 2): 0}, (1, 1, 1))

    @given(trees)
    def test_mirror(self, t):
        assert mirror(mirror(t)) == t
        m, mm = tree_inversions(t), tree_inversions(mirror(t))
        assert all(mm[(b, a)] == t.s[b - 1] - v for (b, a), v in m.items())


def _bounds(elems, x, y):
    ups = [z for z in elems if s_weak_le(x, z) and s_weak_le(y, z)]
    lows = [z for z in elems if s_weak_le(z, x) and s_weak_le(z, y)]
    return [z for z in ups if all(s_weak_le(z, w) for w in ups)], [
        z for z in lows if all(s_weak_le(w, z) for w in lows)
    ]


class TestLattice:
    @pytest.mark.parametrize("s", SMALL_S)
    def test_join_meet_oracle(self, s):
        elems = list(enumerate_trees(s))
        for x in elems:
            for y in elems:
                least, greatest = _bounds(elems, x, y)
                assert least == [s_join(x, y)]
                assert greatest == [s_meet(x, y)]

    @pytest.mark.parametrize("s", SMALL_S)
    def test_extremes(self, s):
        elems = list(enumerate_trees(s))
        assert all(s_weak_le(min_tree(s), t) and s_weak_le(t, max_tree(s)) for t in elems)

    @pytest.mark.parametrize("s", SMALL_S)
    def test_ascents_are_the_covers(self, s):
        elems = list(enumerate_trees(s))
        for t in elems:
            strict = [q for q in elems if q != t and s_weak_le(t, q)]
            covers = {q for q in strict if not any(z != q and s_weak_le(z, q) for z in strict)}
            assert set(s_covers(t)) == covers

    def test_not_an_ascent(self):
        with pytest.raises(ValueError):
            apply_ascent(EXAMPLE, (3, 4))

    def test_s_mismatch(self):
        with pytest.raises(ValueError):
            s_weak_le(min_tree((1, 1)), min_tree((1, 2)))

    @pytest.mark.parametrize("n", range(1, 5))
    def test_all_ones_is_weak_order(self, n):
        s = (1,) * n
        elems = list(enumerate_trees(s))
        f = {t: wo.from_inversions({(a, b) for (b, a), v in tree_inversions(t).items() if v}, n) for t in elems}
        assert set(f.values()) == set(wo.permutations(n))
        for x in elems:
            for y in elems:
                assert s_weak_le(x, y) == wo.weak_le(f[x], f[y])
                assert f[s_join(x, y)] == wo.weak_join(f[x], f[y])


class TestSTamari:
    @pytest.mark.parametrize("s", SMALL_S + [(2, 2, 2)])
    def test_sublattice(self, s):
        tam = s_tamari_trees(s)
        tset = set(tam)
        for x in tam:
            for y in tam:
                assert s_join(x, y) in tset and s_meet(x, y) in tset

    def test_staircase_size(self):
        assert len(s_tamari_trees((2, 2, 2))) == 12

    def test_nu_path(self):
        assert nu_of((1, 2)) == "NEENE"
        assert s_tamari_to_nu_path(max_tree((1, 2))) == "NNEEE"
        with pytest.raises(ValueError):
            s_tamari_to_nu_path(from_nested([3, [2, None, None], [1, None, None]], (1, 1, 1)))

    @pytest.mark.parametrize("s", [(1, 1, 1), (0, 2, 3), (1, 2, 1), (2, 2, 2), (1, 1, 1, 1), (2, 1, 3)])
    def test_nu_tamari_isomorphism(self, s):
        nu = nu_of(s)
        tam = s_tamari_trees(s)
        image = {t: s_tamari_to_nu_path(t) for t in tam}
        assert set(image.values()) == {p.path for p in enumerate_nu_paths(nu)}
        inverse = {v: k for k, v in image.items()}
        for t in tam:
            covers = {image[q] for q in s_covers(t) if is_s_tamari(q)}
            strict = [q for q in tam if q != t and s_weak_le(t, q)]
            tam_covers = {image[q] for q in strict if not any(z != q and s_weak_le(z, q) for z in strict)}
            assert tam_covers == {q.path for q in nu_tamari_covers(NuPath(nu, image[t]))}
            assert covers <= tam_covers
        assert len(inverse) == len(tam)

    @pytest.mark.parametrize("s", [(1, 1, 1), (1, 2, 1), (2, 1, 2)])
    def test_projection(self, s):
        elems = list(enumerate_trees(s))
        tam = set(s_tamari_trees(s))
        for t in elems:
            p = tamari_projection(t)
            assert p in tam and s_weak_le(p, t)
            if t in tam:
                assert p == t
        for x in elems:
            for y in elems:
                if s_weak_le(x, y):
                    assert s_weak_le(tamari_projection(x), tamari_projection(y))


class TestPureIntervals:
    def test_census(self):
        pure = all_pure_intervals((0, 2, 2))
        assert len(pure) == 41
        assert Counter(pure.values()) == {0: 15, 1: 20, 2: 6}

    def test_closed_under_intersection(self):
        pure = all_pure_intervals((0, 2, 2))
        for a in pure:
            for b in pure:
                x = pure_intersect(a, b)
                assert x is None or x in pure

    def test_intersection_is_set_intersection(self):
        pure = list(all_pure_intervals((0, 2, 2)))
        for a in pure[::3]:
            for b in pure[::2]:
                x = pure_intersect(a, b)
                common = set(interval_elements(a)) & set(interval_elements(b))
                assert common == (set(interval_elements(x)) if x else set())
