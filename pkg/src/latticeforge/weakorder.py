"""Permutations, value inversions and the right weak order.

Inversions are value inversions: ``(a, b)`` with ``a < b`` is an inversion
of ``p`` when ``b`` appears before ``a`` in the one-line word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .binarytree import BinaryTree, Tree, tree_size

Pair = tuple[int, int]


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {list(self.word)}")
        object.__setattr__(self, "word", word)

    @property
    def n(self) -> int:
        return len(self.word)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        """``inverse[v-1]`` is the 0-based position of value ``v``."""
        pos = [0] * self.n
        for i, v in enumerate(self.word):
            pos[v - 1] = i
        return tuple(pos)

    @cached_property
    def inversion_set(self) -> frozenset[Pair]:
        pos = self.inverse
        return frozenset(
            (a, b)
            for a in range(1, self.n + 1)
            for b in range(a + 1, self.n + 1)
            if pos[b - 1] < pos[a - 1]
        )

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(x) for x in self.word)
        return ",".join(str(x) for x in self.word)

    def __len__(self) -> int:
        return self.n


PermLike = Union[Permutation, Sequence[int], str]


def perm(p: PermLike) -> Permutation:
    """Coerce a word, digit string or comma-separated string to a permutation."""
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        s = p.strip()
        parts = s.split(",") if "," in s else list(s)
        try:
            return Permutation(tuple(int(x) for x in parts if x.strip()))
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation {p!r}: {exc}") from None
    return Permutation(tuple(p))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def permutations(n: int) -> Iterator[Permutation]:
    """All permutations of size ``n`` in lexicographic order."""
    for w in itertools.permutations(range(1, n + 1)):
        yield Permutation(w)


def all_pairs(n: int) -> frozenset[Pair]:
    return frozenset((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1))


def inversions(p: PermLike) -> frozenset[Pair]:
    return perm(p).inversion_set


def _check_pairs(pairs: Iterable[Pair], n: int) -> frozenset[Pair]:
    out = frozenset((int(a), int(b)) for a, b in pairs)
    for a, b in out:
        if not 1 <= a < b <= n:
            raise ValueError(f"pair {(a, b)} out of range for n={n}")
    return out


def _is_transitive(pairs: frozenset[Pair]) -> bool:
    succ: dict[int, set[int]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    for a, b in pairs:
        for c in succ.get(b, ()):
            if (a, c) not in pairs:
                return False
    return True


def is_inversion_set(pairs: Iterable[Pair], n: int) -> bool:
    s = _check_pairs(pairs, n)
    return _is_transitive(s) and _is_transitive(all_pairs(n) - s)


def transitive_closure(pairs: Iterable[Pair], n: int) -> frozenset[Pair]:
    """Closure of a set of increasing pairs under ``(a,b),(b,c) -> (a,c)``."""
    reach = [[False] * (n + 1) for _ in range(n + 1)]
    for a, b in pairs:
        reach[a][b] = True
    for k in range(1, n + 1):
        rk = reach[k]
        for i in range(1, k):
            if reach[i][k]:
                ri = reach[i]
                for j in range(k + 1, n + 1):
                    if rk[j]:
                        ri[j] = True
    return frozenset((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if reach[a][b])


def from_inversions(pairs: Iterable[Pair], n: int) -> Permutation:
    s = _check_pairs(pairs, n)
    if not is_inversion_set(s, n):
        raise ValueError("not an inversion set: transitivity or co-transitivity fails")
    word = [0] * n
    for v in range(1, n + 1):
        # number of values placed before v
        before = sum(1 for u in range(v + 1, n + 1) if (v, u) in s)
        before += sum(1 for u in range(1, v) if (u, v) not in s)
        word[before] = v
    return Permutation(tuple(word))


def _same_size(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")


def weak_le(p: PermLike, q: PermLike) -> bool:
    p, q = perm(p), perm(q)
    _same_size(p, q)
    return p.inversion_set <= q.inversion_set


def weak_join(p: PermLike, q: PermLike) -> Permutation:
    p, q = perm(p), perm(q)
    _same_size(p, q)
    return from_inversions(transitive_closure(p.inversion_set | q.inversion_set, p.n), p.n)


def weak_meet(p: PermLike, q: PermLike) -> Permutation:
    p, q = perm(p), perm(q)
    _same_size(p, q)
    full = all_pairs(p.n)
    co = transitive_closure((full - p.inversion_set) | (full - q.inversion_set), p.n)
    return from_inversions(full - co, p.n)


def weak_covers(p: PermLike) -> list[Permutation]:
    """Upper covers: swap adjacent positions forming an ascent."""
    p = perm(p)
    out = []
    for i in range(p.n - 1):
        if p.word[i] < p.word[i + 1]:
            w = list(p.word)
            w[i], w[i + 1] = w[i + 1], w[i]
            out.append(Permutation(tuple(w)))
    return out


def standardize(word: Sequence[int]) -> tuple[int, ...]:
    order = sorted(range(len(word)), key=lambda i: word[i])
    out = [0] * len(word)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def contains_pattern(p: PermLike, pattern: PermLike) -> bool:
    p, pattern = perm(p), perm(pattern)
    if pattern.n > p.n:
        raise ValueError("pattern longer than permutation")
    return any(standardize(sub) == pattern.word for sub in itertools.combinations(p.word, pattern.n))


def avoids(p: PermLike, pattern: PermLike) -> bool:
    return not contains_pattern(p, pattern)


def sylvester_insert(p: PermLike) -> Tree:
    """Right-to-left binary search tree insertion; labels are in-order ranks."""
    word = perm(p).word

    def build(values: list[int]) -> Tree:
        if not values:
            return None
        root = values[-1]
        return BinaryTree(build([v for v in values if v < root]), build([v for v in values if v > root]))

    return build(list(word))


def sylvester_class(t: Tree) -> set[Permutation]:
    """Linear extensions of ``t`` with children read before their parent."""

    def extensions(u: Tree, offset: int) -> list[tuple[int, ...]]:
        if u is None:
            return [()]
        label = offset + tree_size(u.left) + 1
        lefts = extensions(u.left, offset)
        rights = extensions(u.right, label)
        size = u.size - 1
        nl = tree_size(u.left)
        out = []
        for slots in itertools.combinations(range(size), nl):
            chosen = set(slots)
            for lw in lefts:
                for rw in rights:
                    li, ri = iter(lw), iter(rw)
                    out.append(tuple(next(li) if k in chosen else next(ri) for k in range(size)) + (label,))
        return out

    return {Permutation(w) for w in extensions(t, 0)}


def class_minimum(t: Tree) -> Permutation:
    """The 312-avoiding linear extension of ``t``."""

    def walk(u: Tree, offset: int) -> list[int]:
        if u is None:
            return []
        label = offset + tree_size(u.left) + 1
        return walk(u.left, offset) + walk(u.right, label) + [label]

    return Permutation(tuple(walk(t, 0)))


def class_maximum(t: Tree) -> Permutation:
    """The 132-avoiding linear extension of ``t``."""

    def walk(u: Tree, offset: int) -> list[int]:
        if u is None:
            return []
        label = offset + tree_size(u.left) + 1
        return walk(u.right, label) + walk(u.left, offset) + [label]

    return Permutation(tuple(walk(t, 0)))

