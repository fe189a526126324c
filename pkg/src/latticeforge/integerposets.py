"""Weak order on integer binary relations and on integer posets.

A relation on ``1..n`` is split into increasing pairs ``(a, b)`` with
``a < b`` and ``a R b``, and decreasing pairs ``(b, a)`` with ``a < b`` and
``b R a``. Reflexivity is implicit. ``R <= S`` when ``Dec R ⊆ Dec S`` and
``Inc S ⊆ Inc R``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

Pair = tuple[int, int]

TAGS = ("WOEP", "WOIP", "TOEP", "TOIP", "BOEP", "BOIP")


@dataclass(frozen=True)
class IntegerRelation:
    n: int
    inc: frozenset[Pair]
    dec: frozenset[Pair]

    def __post_init__(self) -> None:
        inc = frozenset((int(a), int(b)) for a, b in self.inc)
        dec = frozenset((int(b), int(a)) for b, a in self.dec)
        for a, b in inc:
            if not 1 <= a < b <= self.n:
                raise ValueError(f"increasing pair {(a, b)} out of range for n={self.n}")
        for b, a in dec:
            if not 1 <= a < b <= self.n:
                raise ValueError(f"decreasing pair {(b, a)} out of range for n={self.n}")
        object.__setattr__(self, "inc", inc)
        object.__setattr__(self, "dec", dec)

    def related(self, x: int, y: int) -> bool:
        """``x R y``, reflexive."""
        if x == y:
            return True
        return (x, y) in (self.inc if x < y else self.dec)

    def to_json(self) -> dict:
        return {"n": self.n, "inc": sorted(map(list, self.inc)), "dec": sorted(map(list, self.dec))}

    @staticmethod
    def from_json(data: dict) -> "IntegerRelation":
        return IntegerRelation(
            int(data["n"]),
            frozenset(tuple(p) for p in data.get("inc", [])),
            frozenset(tuple(p) for p in data.get("dec", [])),
        )


def relation(n: int, pairs: Iterable[Pair]) -> IntegerRelation:
    """Build from pairs ``(x, y)`` meaning ``x R y``."""
    inc, dec = set(), set()
    for x, y in pairs:
        if x < y:
            inc.add((x, y))
        elif x > y:
            dec.add((x, y))
    return IntegerRelation(n, frozenset(inc), frozenset(dec))


def _same_size(r: IntegerRelation, s: IntegerRelation) -> None:
    if r.n != s.n:
        raise ValueError(f"size mismatch: {r.n} vs {s.n}")


def rel_weak_le(r: IntegerRelation, s: IntegerRelation) -> bool:
    _same_size(r, s)
    return r.dec <= s.dec and s.inc <= r.inc


def rel_meet(r: IntegerRelation, s: IntegerRelation) -> IntegerRelation:
    _same_size(r, s)
    return IntegerRelation(r.n, r.inc | s.inc, r.dec & s.dec)


def rel_join(r: IntegerRelation, s: IntegerRelation) -> IntegerRelation:
    _same_size(r, s)
    return IntegerRelation(r.n, r.inc & s.inc, r.dec | s.dec)


def mirror(r: IntegerRelation) -> IntegerRelation:
    """Relabel ``i -> n+1-i``; this reverses the weak order."""
    m = r.n + 1
    return IntegerRelation(
        r.n,
        frozenset((m - b, m - a) for b, a in r.dec),
        frozenset((m - a, m - b) for a, b in r.inc),
    )


def is_transitive(r: IntegerRelation) -> bool:
    n = r.n
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x != y and r.related(x, y):
                for z in range(1, n + 1):
                    if z != y and r.related(y, z) and not r.related(x, z):
                        return False
    return True


def is_antisymmetric(r: IntegerRelation) -> bool:
    return not any((b, a) in r.dec for a, b in r.inc)


def is_poset(r: IntegerRelation) -> bool:
    return is_antisymmetric(r) and is_transitive(r)


def _increasing_closure(inc: Iterable[Pair], n: int) -> frozenset[Pair]:
    reach = {(a, b) for a, b in inc}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(reach), repeat=2):
            if b == c and (a, d) not in reach:
                reach.add((a, d))
                changed = True
    return frozenset(reach)


def transitive_decreasing_deletion(r: IntegerRelation) -> IntegerRelation:
    """Drop each ``b R a`` (``a < b``) with some ``i R b R a R j``, ``i <= b``, ``j >= a``, but not ``i R j``."""
    n = r.n
    keep = set()
    for b, a in r.dec:
        below = [i for i in range(1, b + 1) if r.related(i, b)]
        above = [j for j in range(a, n + 1) if r.related(a, j)]
        if all(r.related(i, j) for i in below for j in above):
            keep.add((b, a))
    return IntegerRelation(n, r.inc, frozenset(keep))


def poset_meet(p: IntegerRelation, q: IntegerRelation) -> IntegerRelation:
    """Meet in the weak order on integer posets."""
    m = rel_meet(p, q)
    closed = IntegerRelation(m.n, _increasing_closure(m.inc, m.n), m.dec)
    return transitive_decreasing_deletion(closed)


def poset_join(p: IntegerRelation, q: IntegerRelation) -> IntegerRelation:
    return mirror(poset_meet(mirror(p), mirror(q)))


def all_relations(n: int) -> Iterator[IntegerRelation]:
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    for inc_bits in itertools.product((False, True), repeat=len(pairs)):
        inc = frozenset(p for p, bit in zip(pairs, inc_bits) if bit)
        for dec_bits in itertools.product((False, True), repeat=len(pairs)):
            dec = frozenset((b, a) for (a, b), bit in zip(pairs, dec_bits) if bit)
            yield IntegerRelation(n, inc, dec)


def all_posets(n: int) -> list[IntegerRelation]:
    return [r for r in all_relations(n) if is_poset(r)]


def _triples(n: int) -> Iterator[tuple[int, int, int]]:
    return itertools.combinations(range(1, n + 1), 3)


def is_woep(p: IntegerRelation) -> bool:
    return all(p.related(a, b) or p.related(b, a) for a, b in itertools.combinations(range(1, p.n + 1), 2))


def is_woip(p: IntegerRelation) -> bool:
    rel = p.related
    for a, b, c in _triples(p.n):
        if rel(a, c) and not (rel(a, b) or rel(b, c)):
            return False
        if rel(c, a) and not (rel(c, b) or rel(b, a)):
            return False
    return True


def is_toip(p: IntegerRelation) -> bool:
    rel = p.related
    for a, b, c in _triples(p.n):
        if rel(a, c) and not rel(b, c):
            return False
        if rel(c, a) and not rel(b, a):
            return False
    return True


def is_boip(p: IntegerRelation) -> bool:
    rel = p.related
    for a, b, c in _triples(p.n):
        if rel(a, c) and not (rel(a, b) and rel(b, c)):
            return False
        if rel(c, a) and not (rel(c, b) and rel(b, a)):
            return False
    return True


def is_toep(p: IntegerRelation) -> bool:
    """A TOIP whose lower and upper binary trees coincide."""
    if not is_toip(p):
        return False
    from .intervalposets import IntervalPoset, lower_tree, upper_tree

    ip = IntervalPoset(p.n, p.inc, p.dec)
    return lower_tree(ip) == upper_tree(ip)


def is_boep(p: IntegerRelation) -> bool:
    """A BOIP in which every ``i`` and ``i+1`` are comparable."""
    return is_boip(p) and all(p.related(i, i + 1) or p.related(i + 1, i) for i in range(1, p.n))


def classify(p: IntegerRelation) -> set[str]:
    if not is_poset(p):
        raise ValueError("classification applies to posets only")
    tests = {
        "WOEP": is_woep,
        "WOIP": is_woip,
        "TOEP": is_toep,
        "TOIP": is_toip,
        "BOEP": is_boep,
        "BOIP": is_boip,
    }
    return {tag for tag, test in tests.items() if test(p)}


def permutation_poset(word: Iterable[int]) -> IntegerRelation:
    """The total order ``x R y`` iff ``x`` appears before ``y``."""
    word = list(word)
    n = len(word)
    return relation(n, [(word[i], word[j]) for i in range(n) for j in range(i + 1, n)])
