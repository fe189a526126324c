"""Tamari interval-posets, grafting trees, interval statistics and involutions.

An interval-poset on ``1..n`` is stored as its full transitive relation split
into increasing pairs ``(a, c)`` meaning ``a ≺ c`` and decreasing pairs
``(c, a)`` meaning ``c ≺ a``, always with ``a < c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .binarytree import BinaryTree, Tree, enumerate_trees, from_parens, to_parens, tree_size
from .tamari import tree_to_dyck
from .weakorder import Permutation, class_maximum, class_minimum

Pair = tuple[int, int]


@dataclass(frozen=True)
class IntervalPoset:
    n: int
    inc: frozenset[Pair]
    dec: frozenset[Pair]

    def precedes(self, x: int, y: int) -> bool:
        """True when ``x ≺ y`` (strictly)."""
        if x < y:
            return (x, y) in self.inc
        if x > y:
            return (x, y) in self.dec
        return False

    def relations(self) -> frozenset[Pair]:
        return self.inc | self.dec

    def to_json(self) -> dict:
        return {"n": self.n, "inc": sorted(map(list, self.inc)), "dec": sorted(map(list, self.dec))}

    @staticmethod
    def from_json(data: dict) -> "IntervalPoset":
        pairs = [tuple(p) for p in data.get("inc", [])] + [tuple(p) for p in data.get("dec", [])]
        return from_relations(int(data["n"]), pairs)


def _closure(n: int, pairs: Iterable[Pair]) -> list[list[bool]]:
    reach = [[False] * (n + 1) for _ in range(n + 1)]
    for x, y in pairs:
        if not (1 <= x <= n and 1 <= y <= n) or x == y:
            raise ValueError(f"relation {(x, y)} out of range for n={n}")
        reach[x][y] = True
    for k in range(1, n + 1):
        rk = reach[k]
        for i in range(1, n + 1):
            if reach[i][k]:
                ri = reach[i]
                for j in range(1, n + 1):
                    if rk[j]:
                        ri[j] = True
    return reach


def from_relations(n: int, pairs: Iterable[Pair]) -> IntervalPoset:
    """Transitively close ``pairs`` (``(x, y)`` meaning ``x ≺ y``); fails on a cycle."""
    reach = _closure(n, pairs)
    for i in range(1, n + 1):
        if reach[i][i]:
            raise ValueError("relations are not antisymmetric")
    inc = frozenset((a, c) for a in range(1, n + 1) for c in range(a + 1, n + 1) if reach[a][c])
    dec = frozenset((c, a) for a in range(1, n + 1) for c in range(a + 1, n + 1) if reach[c][a])
    return IntervalPoset(n, inc, dec)


def is_interval_poset(p: IntervalPoset) -> bool:
    """Partial-order axioms plus ``a ≺ c ⇒ b ≺ c`` and ``c ≺ a ⇒ b ≺ a`` for ``a < b < c``."""
    n = p.n
    rel = p.relations()
    for x, y in rel:
        if (y, x) in rel:
            return False
    for x, y in rel:
        for z in range(1, n + 1):
            if (y, z) in rel and z != x and (x, z) not in rel:
                return False
    for a, c in p.inc:
        if any((b, c) not in p.inc for b in range(a + 1, c)):
            return False
    for c, a in p.dec:
        if any((b, a) not in p.dec for b in range(a + 1, c)):
            return False
    return True


def decreasing_relations(t: Tree) -> set[Pair]:
    """``c ≺ a`` for every ``c`` in the right subtree of ``a``."""
    out: set[Pair] = set()

    def walk(u: Tree, offset: int) -> None:
        if u is None:
            return
        label = offset + tree_size(u.left) + 1
        for c in range(label + 1, label + tree_size(u.right) + 1):
            out.add((c, label))
        walk(u.left, offset)
        walk(u.right, label)

    walk(t, 0)
    return out


def increasing_relations(t: Tree) -> set[Pair]:
    """``a ≺ c`` for every ``a`` in the left subtree of ``c``."""
    out: set[Pair] = set()

    def walk(u: Tree, offset: int) -> None:
        if u is None:
            return
        label = offset + tree_size(u.left) + 1
        for a in range(offset + 1, label):
            out.add((a, label))
        walk(u.left, offset)
        walk(u.right, label)

    walk(t, 0)
    return out


def from_tree_pair(t: Tree, q: Tree) -> IntervalPoset:
    """Interval-poset of ``[t, q]``; raises ``ValueError`` when ``t`` is not below ``q``."""
    n = tree_size(t)
    if tree_size(q) != n:
        raise ValueError(f"size mismatch: {n} vs {tree_size(q)}")
    try:
        return from_relations(n, decreasing_relations(t) | increasing_relations(q))
    except ValueError:
        raise ValueError("incompatible forests: the lower tree is not below the upper tree") from None


def _lower_tree(p: IntervalPoset, lo: int, hi: int) -> Tree:
    if lo > hi:
        return None
    for r in range(lo, hi + 1):
        if all((c, r) in p.dec for c in range(r + 1, hi + 1)):
            return BinaryTree(_lower_tree(p, lo, r - 1), _lower_tree(p, r + 1, hi))
    raise AssertionError("unreachable: r = hi always qualifies")


def _upper_tree(p: IntervalPoset, lo: int, hi: int) -> Tree:
    if lo > hi:
        return None
    for r in range(hi, lo - 1, -1):
        if all((a, r) in p.inc for a in range(lo, r)):
            return BinaryTree(_upper_tree(p, lo, r - 1), _upper_tree(p, r + 1, hi))
    raise AssertionError("unreachable: r = lo always qualifies")


def lower_tree(p: IntervalPoset) -> Tree:
    return _lower_tree(p, 1, p.n)


def upper_tree(p: IntervalPoset) -> Tree:
    return _upper_tree(p, 1, p.n)


def to_tree_pair(p: IntervalPoset) -> tuple[Tree, Tree]:
    return lower_tree(p), upper_tree(p)


def linear_extension_interval(p: IntervalPoset) -> tuple[Permutation, Permutation]:
    """Bounds of the weak-order interval formed by the linear extensions of ``p``."""
    t, q = to_tree_pair(p)
    return class_minimum(t), class_maximum(q)


def linear_extensions(p: IntervalPoset) -> Iterator[Permutation]:
    """All linear extensions, by backtracking (small sizes only)."""
    n = p.n
    preds = {y: {x for x in range(1, n + 1) if p.precedes(x, y)} for y in range(1, n + 1)}
    word: list[int] = []
    used: set[int] = set()

    def rec() -> Iterator[Permutation]:
        if len(word) == n:
            yield Permutation(tuple(word))
            return
        for v in range(1, n + 1):
            if v not in used and preds[v] <= used:
                used.add(v)
                word.append(v)
                yield from rec()
                word.pop()
                used.remove(v)

    return rec()


def all_intervals(n: int) -> list[IntervalPoset]:
    """Every interval-poset of size ``n``, from all compatible pairs of trees."""
    trees = list(enumerate_trees(n))
    inc_rel = [increasing_relations(q) for q in trees]
    out = []
    for t in trees:
        d = decreasing_relations(t)
        for i in inc_rel:
            try:
                out.append(from_relations(n, d | i))
            except ValueError:
                pass
    return out


def brute_force_interval_posets(n: int) -> Iterator[IntervalPoset]:
    """Scan every assignment of (none, inc, dec) to the pairs ``a < c``; exponential."""
    pairs = [(a, c) for a in range(1, n + 1) for c in range(a + 1, n + 1)]

    def rec(i: int, inc: list[Pair], dec: list[Pair]) -> Iterator[IntervalPoset]:
        if i == len(pairs):
            p = IntervalPoset(n, frozenset(inc), frozenset(dec))
            if is_interval_poset(p):
                yield p
            return
        a, c = pairs[i]
        yield from rec(i + 1, inc, dec)
        inc.append((a, c))
        yield from rec(i + 1, inc, dec)
        inc.pop()
        dec.append((c, a))
        yield from rec(i + 1, inc, dec)
        dec.pop()

    return rec(0, [], [])


def interval_formula(n: int) -> int:
    """Closed form ``2 (4n+1)! / ((n+1)! (3n+2)!)``."""
    return 2 * factorial(4 * n + 1) // (factorial(n + 1) * factorial(3 * n + 2))


# Polynomials in x are coefficient lists, index = degree.


def _poly_add(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def divided_difference(p: Sequence[int]) -> list[int]:
    """``(x p(x) - p(1)) / (x - 1)``, which is ``sum_k p_k (1 + x + ... + x^k)``."""
    out = [0] * len(p)
    for k, c in enumerate(p):
        for i in range(k + 1):
            out[i] += c
    return out


def bt_polynomial(t: Tree) -> list[int]:
    """``BT_T(x)``; the coefficient of ``x^k`` counts trees below ``t`` with ``k`` contacts."""
    if t is None:
        return [1]
    return [0] + _poly_mul(bt_polynomial(t.left), divided_difference(bt_polynomial(t.right)))


def functional_equation_coefficients(n: int) -> list[list[int]]:
    """Coefficients ``P_k(x)`` of ``z^k`` in ``Φ = 1 + z x Φ (x Φ - Φ(1)) / (x - 1)``."""
    coeffs: list[list[int]] = [[1]]
    dd: list[list[int]] = [divided_difference([1])]
    for k in range(1, n + 1):
        acc: list[int] = []
        for i in range(k):
            acc = _poly_add(acc, _poly_mul(coeffs[i], dd[k - 1 - i]))
        pk = [0] + acc
        coeffs.append(pk)
        dd.append(divided_difference(pk))
    return coeffs


def count_intervals(n: int) -> int:
    return len(all_intervals(n))


def interval_generating_check(n: int) -> bool:
    """Enumeration, closed formula and functional equation agree at size ``n``."""
    enumerated = count_intervals(n)
    fe = sum(functional_equation_coefficients(n)[n])
    return enumerated == interval_formula(n) == fe


def compose(left: IntervalPoset, right: IntervalPoset, r: int) -> IntervalPoset:
    """Insert a new node ``k+1`` between ``left`` (size ``k``) and ``right``.

    Every node of ``left`` gets ``i ≺ k+1``; the first ``r`` components of the
    decreasing forest of ``right`` are attached below ``k+1``.
    """
    k = left.n
    comps = decreasing_components(right)
    if not 0 <= r <= len(comps):
        raise ValueError(f"r={r} out of range 0..{len(comps)}")
    new = k + 1
    pairs: list[Pair] = list(left.inc) + list(left.dec)
    pairs += [(x + new, y + new) for x, y in right.relations()]
    pairs += [(i, new) for i in range(1, k + 1)]
    for comp in comps[:r]:
        pairs += [(c + new, new) for c in comp]
    return from_relations(k + 1 + right.n, pairs)


def compose_all(left: IntervalPoset, right: IntervalPoset) -> list[IntervalPoset]:
    return [compose(left, right, r) for r in range(contact_value(right) + 1)]


def empty_poset(n: int) -> IntervalPoset:
    return IntervalPoset(n, frozenset(), frozenset())


def decreasing_parent(p: IntervalPoset, c: int) -> int | None:
    """Closest ``a < c`` with ``c ≺ a``: the parent of ``c`` in the decreasing forest."""
    for a in range(c - 1, 0, -1):
        if (c, a) in p.dec:
            return a
    return None


def increasing_parent(p: IntervalPoset, a: int) -> int | None:
    for c in range(a + 1, p.n + 1):
        if (a, c) in p.inc:
            return c
    return None


def decreasing_components(p: IntervalPoset) -> list[list[int]]:
    """Components of the decreasing forest; they are intervals of labels."""
    comps: list[list[int]] = []
    for c in range(1, p.n + 1):
        if decreasing_parent(p, c) is None:
            comps.append([c])
        else:
            comps[-1].append(c)
    return comps


def contact_value(p: IntervalPoset) -> int:
    return len(decreasing_components(p))


def sub_poset(p: IntervalPoset, lo: int, hi: int) -> IntervalPoset:
    """Restriction to ``lo..hi`` relabeled from 1."""
    shift = lo - 1
    inc = frozenset((a - shift, c - shift) for a, c in p.inc if lo <= a and c <= hi)
    dec = frozenset((c - shift, a - shift) for c, a in p.dec if lo <= a and c <= hi)
    return IntervalPoset(hi - lo + 1, inc, dec)


@dataclass(frozen=True)
class GraftingTree:
    """Upper tree of an interval with in-order labels ``ℓ(v_1..v_n)``."""

    shape: Tree
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != tree_size(self.shape):
            raise ValueError("one label per node is required")
        for v, bound in enumerate(_label_bounds(self.shape, labels), start=1):
            if not 0 <= labels[v - 1] <= bound:
                raise ValueError(f"label {labels[v - 1]} at node {v} violates 0 <= label <= {bound}")

    @property
    def n(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {"shape": to_parens(self.shape), "labels": list(self.labels)}

    @staticmethod
    def from_json(data: dict) -> "GraftingTree":
        return GraftingTree(from_parens(data["shape"]), tuple(data["labels"]))


def _label_bounds(shape: Tree, labels: Sequence[int]) -> list[int]:
    """``size(T_R(v)) - sum of labels in T_R(v)`` for each node in in-order."""
    bounds = [0] * len(labels)

    def walk(u: Tree, offset: int) -> None:
        if u is None:
            return
        label = offset + tree_size(u.left) + 1
        rs = tree_size(u.right)
        bounds[label - 1] = rs - sum(labels[label : label + rs])
        walk(u.left, offset)
        walk(u.right, label)

    walk(shape, 0)
    return bounds


def to_grafting(p: IntervalPoset) -> GraftingTree:
    labels = [0] * p.n
    for c in range(1, p.n + 1):
        a = decreasing_parent(p, c)
        if a is not None:
            labels[a - 1] += 1
    return GraftingTree(upper_tree(p), tuple(labels))


def from_grafting(g: GraftingTree) -> IntervalPoset:
    def build(u: Tree, labels: Sequence[int]) -> IntervalPoset:
        if u is None:
            return empty_poset(0)
        k = tree_size(u.left)
        left = build(u.left, labels[:k])
        right = build(u.right, labels[k + 1 :])
        return compose(left, right, labels[k])

    return build(g.shape, g.labels)


def enumerate_grafting_trees(n: int) -> Iterator[GraftingTree]:
    """All grafting trees of size ``n`` through the label constraint."""

    def labelings(u: Tree) -> Iterator[tuple[int, ...]]:
        if u is None:
            yield ()
            return
        for left in labelings(u.left):
            for right in labelings(u.right):
                slack = tree_size(u.right) - sum(right)
                for r in range(slack + 1):
                    yield left + (r,) + right

    for shape in enumerate_trees(n):
        for labels in labelings(shape):
            yield GraftingTree(shape, labels)


@lru_cache(maxsize=None)
def _contact_census(n: int) -> tuple[int, ...]:
    """Number of intervals of size ``n`` per contact value, by the composition recursion."""
    if n == 0:
        return (1,)
    out = [0] * (n + 1)
    for k in range(n):
        left = _contact_census(k)
        right = _contact_census(n - 1 - k)
        for ci, a in enumerate(left):
            for cj, b in enumerate(right):
                for j in range(cj + 1):
                    out[ci + 1 + j] += a * b
    return tuple(out)


def count_by_composition(n: int) -> int:
    return sum(_contact_census(n))


def contact_vector(p: IntervalPoset) -> list[int]:
    g = to_grafting(p)
    return [p.n - sum(g.labels)] + list(g.labels[: p.n - 1])


def contacts_from_lower_path(p: IntervalPoset) -> list[int]:
    """Contact vector read directly on the lower Dyck path."""
    d = tree_to_dyck(lower_tree(p))

    def returns(sub: str) -> int:
        h = 0
        count = 0
        for ch in sub:
            h += 1 if ch == "1" else -1
            count += h == 0
        return count

    out = [returns(d)]
    for i, ch in enumerate(d):
        if ch == "1":
            h = 0
            for j in range(i, len(d)):
                h += 1 if d[j] == "1" else -1
                if h == 0:
                    out.append(returns(d[i + 1 : j]))
                    break
    return out[: p.n]


def rise_vector(p: IntervalPoset) -> list[int]:
    """Number of up steps right before each down step of the upper path."""
    d = tree_to_dyck(upper_tree(p))
    out = []
    run = 0
    for ch in d:
        if ch == "1":
            run += 1
        else:
            out.append(run)
            run = 0
    return out


def descent_vector(p: IntervalPoset) -> list[int]:
    """Number of down steps right after each up step of the upper path, read right to left."""
    d = tree_to_dyck(upper_tree(p))
    out = []
    for i, ch in enumerate(d):
        if ch == "1":
            j = i + 1
            while j < len(d) and d[j] == "0":
                j += 1
            out.append(j - i - 1)
    return out[::-1]


def initial_rise(p: IntervalPoset) -> int:
    return rise_vector(p)[0] if p.n else 0


def tamari_inversions(p: IntervalPoset) -> set[Pair]:
    out = set()
    for a in range(1, p.n + 1):
        for c in range(a + 1, p.n + 1):
            if any((c, b) in p.dec for b in range(a, c)):
                continue
            if any((a, b) in p.inc for b in range(a + 1, c + 1)):
                continue
            out.add((a, c))
    return out


def distance(p: IntervalPoset) -> int:
    return len(tamari_inversions(p))


def grafting_deficits(g: GraftingTree) -> list[int]:
    return [b - lab for b, lab in zip(_label_bounds(g.shape, g.labels), g.labels)]


def complement(p: IntervalPoset) -> IntervalPoset:
    """Ψ: relabel ``i -> n+1-i``; increasing and decreasing relations swap."""
    n = p.n
    return from_relations(n, [(n + 1 - x, n + 1 - y) for x, y in p.relations()])


def _reverse_left_branches(u: Tree, labels: Sequence[int]) -> tuple[Tree, list[int]]:
    """Reverse every maximal left branch, keeping each node's label and right subtree."""
    if u is None:
        return None, []
    branch = []
    node = u
    while node is not None:
        branch.append(node)
        node = node.left
    # in-order visits the branch bottom to top, each node followed by its right subtree
    pieces: list[tuple[int, Tree, list[int]]] = []
    pos = 0
    for node in reversed(branch):
        rs = tree_size(node.right)
        right, rlabels = _reverse_left_branches(node.right, labels[pos + 1 : pos + 1 + rs])
        pieces.append((labels[pos], right, rlabels))
        pos += 1 + rs
    # the old top becomes the new bottom
    tree: Tree = None
    out: list[int] = []
    for label, right, rlabels in reversed(pieces):
        tree = BinaryTree(tree, right)
        out += [label] + rlabels
    return tree, out


def left_branch(p: IntervalPoset) -> IntervalPoset:
    """Φ: the left-branch involution on the grafting tree."""
    g = to_grafting(p)
    shape, labels = _reverse_left_branches(g.shape, g.labels)
    return from_grafting(GraftingTree(shape, tuple(labels)))


def rise_contact(p: IntervalPoset) -> IntervalPoset:
    """β = Φ ∘ Ψ ∘ Φ."""
    return left_branch(complement(left_branch(p)))


def is_m_interval(p: IntervalPoset, m: int) -> bool:
    """``im ≺ im-1 ≺ ... ≺ im-(m-1)`` for every block ``i``."""
    if m < 1 or p.n % m:
        raise ValueError(f"size {p.n} is not divisible by m={m}")
    for i in range(1, p.n // m + 1):
        for k in range(1, m):
            if (i * m - k + 1, i * m - k) not in p.dec:
                return False
    return True


def all_m_intervals(m: int, n: int) -> list[IntervalPoset]:
    return [p for p in all_intervals(m * n) if is_m_interval(p, m)]


def count_m_intervals(m: int, n: int) -> int:
    return len(all_m_intervals(m, n))


def m_interval_formula(m: int, n: int) -> int:
    """``(m+1) / (n (mn+1)) binom((m+1)^2 n + m, n-1)``."""
    num = (m + 1) * comb((m + 1) ** 2 * n + m, n - 1)
    den = n * (m * n + 1)
    if num % den:
        raise ArithmeticError("formula is not integral")
    return num // den


def expand(g: GraftingTree, m: int) -> GraftingTree:
    out = []
    for i, lab in enumerate(g.labels, start=1):
        if i % m == 0:
            out.append(m * lab)
        else:
            if lab < 1:
                raise ValueError(f"node {i} needs a positive label to expand")
            out.append(m * (lab - 1))
    return GraftingTree(g.shape, tuple(out))


def contract(g: GraftingTree, m: int) -> GraftingTree:
    out = []
    for i, lab in enumerate(g.labels, start=1):
        if lab % m:
            raise ValueError(f"label {lab} at node {i} is not divisible by m={m}")
        out.append(lab // m if i % m == 0 else lab // m + 1)
    return GraftingTree(g.shape, tuple(out))


def m_rise_contact(p: IntervalPoset, m: int) -> IntervalPoset:
    """β_m: expand, apply β, contract."""
    if not is_m_interval(p, m):
        raise ValueError("not an m-Tamari interval")
    expanded = from_grafting(expand(to_grafting(p), m))
    image = rise_contact(expanded)
    return from_grafting(contract(to_grafting(image), m))


def m_contact_vector(p: IntervalPoset, m: int) -> list[int]:
    """Contact vector of the expanded interval divided by ``m``."""
    vec = contact_vector(from_grafting(expand(to_grafting(p), m)))
    return [c // m for c in vec]


def m_rise_vector(p: IntervalPoset, m: int) -> list[int]:
    return [r // m for r in rise_vector(p)]
