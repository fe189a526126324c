"""s-decreasing trees, tree-inversion multisets and the s-weak lattice.

Node ``i`` has ``s(i) + 1`` ordered children and labels decrease from the
root ``n`` to the leaves. A tree is stored as ``children[i-1]``, the tuple of
child labels of node ``i`` with ``0`` marking an empty leaf. Inversion
multisets map pairs ``(b, a)`` with ``a < b`` to a cardinality in
``[0, s(b)]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

Pair = tuple[int, int]
Multiset = dict[Pair, int]


def check_s(s: Sequence[int]) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if not s:
        raise ValueError("s must be nonempty")
    if any(x < 0 for x in s):
        raise ValueError(f"s entries must be nonnegative, got {list(s)}")
    return s


@dataclass(frozen=True)
class STree:
    s: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        s = check_s(self.s)
        children = tuple(tuple(int(c) for c in row) for row in self.children)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "children", children)
        n = len(s)
        if len(children) != n:
            raise ValueError(f"expected {n} child lists, got {len(children)}")
        seen: list[int] = []
        for i, row in enumerate(children, start=1):
            if len(row) != s[i - 1] + 1:
                raise ValueError(f"node {i} needs {s[i - 1] + 1} children, got {len(row)}")
            for c in row:
                if c and not 1 <= c < i:
                    raise ValueError(f"child {c} of node {i} breaks the decreasing labeling")
                if c:
                    seen.append(c)
        if sorted(seen) != list(range(1, n)):
            raise ValueError("every node except the root must appear exactly once as a child")

    @property
    def n(self) -> int:
        return len(self.s)

    @cached_property
    def paths(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Path of ``(ancestor, child index)`` steps from the root to each node."""
        out = {self.n: ()}
        for i in range(self.n, 0, -1):
            for k, c in enumerate(self.children[i - 1]):
                if c:
                    out[c] = out[i] + ((i, k),)
        return out

    def to_nested(self) -> list:
        def build(i: int) -> list:
            return [i] + [build(c) if c else None for c in self.children[i - 1]]

        return build(self.n)

    def __str__(self) -> str:
        return json.dumps(self.to_nested(), separators=(",", ":"))


def from_nested(data, s: Sequence[int]) -> STree:
    """Parse ``[label, child_0, ..., child_s]`` with ``null`` for empty leaves."""
    if isinstance(data, str):
        data = json.loads(data)
    s = check_s(s)
    children: dict[int, tuple[int, ...]] = {}

    def walk(node) -> int:
        if node is None:
            return 0
        if not isinstance(node, list) or not node:
            raise ValueError(f"malformed tree node {node!r}")
        label = int(node[0])
        if label in children or not 1 <= label <= len(s):
            raise ValueError(f"bad or repeated label {label}")
        children[label] = ()
        children[label] = tuple(walk(c) for c in node[1:])
        return label

    root = walk(data)
    if root != len(s) or len(children) != len(s):
        raise ValueError("tree must contain every label once with the root labeled n")
    return STree(s, tuple(children[i] for i in range(1, len(s) + 1)))


def _card_at(path: Sequence[tuple[int, int]], b: int, path_b: Sequence[tuple[int, int]], sb: int) -> int:
    """Cardinality of a position with root path ``path`` seen from node ``b``."""
    for (u, k), (v, j) in zip(path, path_b):
        if u != v or k != j:
            return 0 if k < j else sb
    if len(path) > len(path_b):
        return path[len(path_b)][1]
    raise ValueError("position is an ancestor of b")


def tree_inversions(t: STree) -> Multiset:
    paths = t.paths
    return {
        (b, a): _card_at(paths[a], b, paths[b], t.s[b - 1])
        for b in range(2, t.n + 1)
        for a in range(1, b)
    }


def _check_multiset(m: Mapping[Pair, int], s: tuple[int, ...]) -> Multiset:
    n = len(s)
    out = {(b, a): 0 for b in range(2, n + 1) for a in range(1, b)}
    for (b, a), v in m.items():
        if (b, a) not in out:
            raise ValueError(f"pair {(b, a)} is not (b, a) with 1 <= a < b <= {n}")
        if not 0 <= v <= s[b - 1]:
            raise ValueError(f"card{(b, a)} = {v} outside [0, {s[b - 1]}]")
        out[(b, a)] = int(v)
    return out


def is_transitive(m: Mapping[Pair, int], n: int) -> bool:
    return all(
        m[(b, a)] == 0 or m[(c, a)] >= m[(c, b)] for a, b, c in itertools.combinations(range(1, n + 1), 3)
    )


def is_planar(m: Mapping[Pair, int], s: Sequence[int]) -> bool:
    return all(
        m[(b, a)] == s[b - 1] or m[(c, b)] >= m[(c, a)]
        for a, b, c in itertools.combinations(range(1, len(s) + 1), 3)
    )


def is_tree_inversion_set(m: Mapping[Pair, int], s: Sequence[int]) -> bool:
    s = check_s(s)
    m = _check_multiset(m, s)
    return is_transitive(m, len(s)) and is_planar(m, s)


def from_inversions(m: Mapping[Pair, int], s: Sequence[int]) -> STree:
    """Rebuild the tree by inserting ``n-1, ..., 1`` into the unique leaf matching their cardinalities."""
    s = check_s(s)
    m = _check_multiset(m, s)
    if not (is_transitive(m, len(s)) and is_planar(m, s)):
        raise ValueError("not a tree-inversion multiset: transitivity or planarity fails")
    n = len(s)
    rows = {n: [0] * (s[n - 1] + 1)}
    paths = {n: ()}
    for a in range(n - 1, 0, -1):
        target = None
        for p in list(rows):
            for k, c in enumerate(rows[p]):
                if c:
                    continue
                leaf = paths[p] + ((p, k),)
                if all(_card_at(leaf, b, paths[b], s[b - 1]) == m[(b, a)] for b in rows):
                    target = (p, k)
                    break
            if target:
                break
        if target is None:
            raise ValueError(f"no position for node {a}")
        p, k = target
        rows[p][k] = a
        rows[a] = [0] * (s[a - 1] + 1)
        paths[a] = paths[p] + ((p, k),)
    return STree(s, tuple(tuple(rows[i]) for i in range(1, n + 1)))


def enumerate_trees(s: Sequence[int]) -> Iterator[STree]:
    """Insert ``n, n-1, ..., 1`` into every free leaf in turn."""
    s = check_s(s)
    n = len(s)

    def rec(a: int, rows: dict[int, list[int]]) -> Iterator[STree]:
        if a == 0:
            yield STree(s, tuple(tuple(rows[i]) for i in range(1, n + 1)))
            return
        for p in sorted(rows, reverse=True):
            for k, c in enumerate(rows[p]):
                if not c:
                    rows[p][k] = a
                    rows[a] = [0] * (s[a - 1] + 1)
                    yield from rec(a - 1, rows)
                    del rows[a]
                    rows[p][k] = 0

    return rec(n - 1, {n: [0] * (s[n - 1] + 1)})


def count(s: Sequence[int]) -> int:
    s = check_s(s)
    total = 1
    for k in range(2, len(s) + 1):
        total *= 1 + sum(s[k - 1 :])
    return total


def min_tree(s: Sequence[int]) -> STree:
    return from_inversions({}, s)


def max_tree(s: Sequence[int]) -> STree:
    s = check_s(s)
    return from_inversions({(b, a): s[b - 1] for b in range(2, len(s) + 1) for a in range(1, b)}, s)


def _same_s(t: STree, q: STree) -> None:
    if t.s != q.s:
        raise ValueError(f"s mismatch: {list(t.s)} vs {list(q.s)}")


def s_weak_le(t: STree, q: STree) -> bool:
    _same_s(t, q)
    mt, mq = tree_inversions(t), tree_inversions(q)
    return all(mt[k] <= mq[k] for k in mt)


def transitive_closure(m: Mapping[Pair, int], n: int) -> Multiset:
    """Least transitive multiset above ``m``: raise ``card(c,a)`` to ``card(c,b)`` while ``card(b,a) > 0``."""
    out = dict(m)
    changed = True
    while changed:
        changed = False
        for a, b, c in itertools.combinations(range(1, n + 1), 3):
            if out[(b, a)] > 0 and out[(c, a)] < out[(c, b)]:
                out[(c, a)] = out[(c, b)]
                changed = True
    return out


def s_join(t: STree, q: STree) -> STree:
    _same_s(t, q)
    mt, mq = tree_inversions(t), tree_inversions(q)
    return from_inversions(transitive_closure({k: max(mt[k], mq[k]) for k in mt}, t.n), t.s)


def mirror(t: STree) -> STree:
    """Reverse every child list; cardinalities become ``s(b) - card(b, a)``."""
    return STree(t.s, tuple(tuple(reversed(row)) for row in t.children))


def s_meet(t: STree, q: STree) -> STree:
    return mirror(s_join(mirror(t), mirror(q)))


def tree_ascents(t: STree) -> list[Pair]:
    """Pairs ``(a, c)``: ``a`` sits in a non-last subtree of its ancestor ``c``, in the
    last subtree of every ancestor between them, and has an empty last child."""
    paths = t.paths
    out = []
    for c in range(2, t.n + 1):
        for a in range(1, c):
            ancestors = {u: k for u, k in paths[a]}
            if c not in ancestors or ancestors[c] >= t.s[c - 1]:
                continue
            if any(k != t.s[b - 1] for b, k in ancestors.items() if b < c):
                continue
            if t.s[a - 1] > 0 and t.children[a - 1][-1]:
                continue
            out.append((a, c))
    return out


def apply_ascent(t: STree, ascent: Pair) -> STree:
    """Increment ``card(c, a)`` and close transitively."""
    if ascent not in tree_ascents(t):
        raise ValueError(f"{ascent} is not a tree-ascent")
    a, c = ascent
    m = tree_inversions(t)
    m[(c, a)] += 1
    return from_inversions(transitive_closure(m, t.n), t.s)


def s_covers(t: STree) -> list[STree]:
    return [apply_ascent(t, x) for x in tree_ascents(t)]


def is_s_tamari(t: STree) -> bool:
    m = tree_inversions(t)
    return all(m[(c, a)] <= m[(c, b)] for a, b, c in itertools.combinations(range(1, t.n + 1), 3))


def s_tamari_trees(s: Sequence[int]) -> list[STree]:
    return [t for t in enumerate_trees(s) if is_s_tamari(t)]


def tamari_projection(t: STree) -> STree:
    """The largest s-Tamari tree below ``t``; a lattice quotient map when ``s`` has no zeros."""
    best = min_tree(t.s)
    for q in s_tamari_trees(t.s):
        if s_weak_le(q, t):
            best = s_join(best, q)
    return best


def nu_of(s: Sequence[int]) -> str:
    """The lattice path ``N E^{s(n)} N E^{s(n-1)} ... N E^{s(1)}``."""
    s = check_s(s)
    return "".join("N" + "E" * x for x in reversed(s))


def s_tamari_to_nu_path(t: STree) -> str:
    """Node ``a`` gives the N step at abscissa ``sum over c > a of s(c) - card(c, a)``."""
    if not is_s_tamari(t):
        raise ValueError("tree is not s-Tamari")
    m = tree_inversions(t)
    n = t.n
    xs = [sum(t.s[c - 1] - m[(c, a)] for c in range(a + 1, n + 1)) for a in range(n, 0, -1)]
    total = sum(t.s)
    out = []
    x = 0
    for target in xs:
        out.append("E" * (target - x) + "N")
        x = target
    out.append("E" * (total - x))
    return "".join(out)


@dataclass(frozen=True)
class Interval:
    bottom: STree
    top: STree


def interval_elements(iv: Interval) -> list[STree]:
    return [t for t in enumerate_trees(iv.bottom.s) if s_weak_le(iv.bottom, t) and s_weak_le(t, iv.top)]


def pure_interval(t: STree, ascents: Iterable[Pair]) -> Interval:
    """From ``t`` to the join of the covers given by the selected ascents."""
    top = t
    for x in ascents:
        top = s_join(top, apply_ascent(t, x))
    return Interval(t, top)


def pure_intersect(i1: Interval, i2: Interval) -> Optional[Interval]:
    lo = s_join(i1.bottom, i2.bottom)
    hi = s_meet(i1.top, i2.top)
    return Interval(lo, hi) if s_weak_le(lo, hi) else None


def all_pure_intervals(s: Sequence[int]) -> dict[Interval, int]:
    """Every pure interval with its dimension."""
    out: dict[Interval, int] = {}
    for t in enumerate_trees(s):
        asc = tree_ascents(t)
        for k in range(len(asc) + 1):
            for sub in itertools.combinations(asc, k):
                out.setdefault(pure_interval(t, sub), k)
    return out


def multiset_to_json(m: Mapping[Pair, int]) -> dict[str, int]:
    return {f"{b},{a}": v for (b, a), v in sorted(m.items())}


def multiset_from_json(data: Mapping[str, int]) -> Multiset:
    out = {}
    for key, v in data.items():
        b, a = (int(x) for x in key.split(","))
        out[(b, a)] = int(v)
    return out
