"""Permutrees: decorations, insertion, congruence classes, counting, coordinates and automata.

A decoration is a word over ``N`` (none), ``D`` (down), ``U`` (up) and ``B``
(up and down); letter ``v`` decorates the node labeled ``v``. Edges of a
permutree are stored as pairs ``(u, v)`` where ``u`` sits below ``v``, so the
transitive closure of the edges is a poset whose linear extensions form the
congruence class.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .weakorder import Permutation, PermLike, perm, permutations, weak_join, weak_meet, weak_le

SYMBOLS = "NDUB"
DOWN = frozenset("DB")
UP = frozenset("UB")


def check_decoration(delta: str) -> str:
    delta = delta.strip().upper()
    if any(ch not in SYMBOLS for ch in delta):
        raise ValueError(f"decorations use the letters N, D, U, B; got {delta!r}")
    return delta


def all_decorations(n: int) -> Iterator[str]:
    for w in itertools.product(SYMBOLS, repeat=n):
        yield "".join(w)


@dataclass(frozen=True)
class Permutree:
    decoration: str
    edges: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.decoration)

    @cached_property
    def below(self) -> dict[int, frozenset[int]]:
        """Strict descendants of each node."""
        children: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            children[v].append(u)
        out: dict[int, frozenset[int]] = {}

        def visit(v: int) -> frozenset[int]:
            if v not in out:
                acc: set[int] = set()
                for u in children[v]:
                    acc.add(u)
                    acc |= visit(u)
                out[v] = frozenset(acc)
            return out[v]

        for v in range(1, self.n + 1):
            visit(v)
        return out

    @cached_property
    def above(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for v, desc in self.below.items():
            for u in desc:
                out[u].add(v)
        return {v: frozenset(s) for v, s in out.items()}

    def precedes(self, u: int, v: int) -> bool:
        return u in self.below[v]

    def to_json(self) -> dict:
        slots: dict[str, dict[str, int]] = {}
        for u, v in sorted(self.edges):
            slots.setdefault(str(v), {})["left_child" if u < v else "right_child"] = u
            slots.setdefault(str(u), {})["left_parent" if v < u else "right_parent"] = v
        return {"decoration": self.decoration, "nodes": {k: slots.get(k, {}) for k in map(str, range(1, self.n + 1))}}


def insert(p: PermLike, delta: str) -> Permutree:
    """Insertion of ``p`` read left to right, with walls below down nodes and above up nodes."""
    p = perm(p)
    delta = check_decoration(delta)
    if p.n != len(delta):
        raise ValueError(f"size mismatch: permutation {p.n} vs decoration {len(delta)}")
    walls = [v for v in range(1, p.n + 1) if delta[v - 1] in DOWN]
    strands: list[int | None] = [None] * (len(walls) + 1)
    edges: set[tuple[int, int]] = set()
    for v in p.word:
        sym = delta[v - 1]
        k = bisect.bisect_left(walls, v)
        if sym in DOWN:
            for src in (strands[k], strands[k + 1]):
                if src is not None:
                    edges.add((src, v))
            walls.pop(k)
            strands[k : k + 2] = [v]
        else:
            if strands[k] is not None:
                edges.add((strands[k], v))
            strands[k] = v
        if sym in UP:
            walls.insert(k, v)
            strands[k : k + 1] = [v, v]
    return Permutree(delta, frozenset(edges))


def linear_extensions(t: Permutree) -> Iterator[Permutation]:
    n = t.n
    word: list[int] = []
    used: set[int] = set()

    def rec() -> Iterator[Permutation]:
        if len(word) == n:
            yield Permutation(tuple(word))
            return
        for v in range(1, n + 1):
            if v not in used and t.below[v] <= used:
                used.add(v)
                word.append(v)
                yield from rec()
                word.pop()
                used.remove(v)

    return rec()


def _greedy_extension(t: Permutree, largest: bool) -> Permutation:
    used: set[int] = set()
    word: list[int] = []
    order = range(t.n, 0, -1) if largest else range(1, t.n + 1)
    while len(word) < t.n:
        v = next(v for v in order if v not in used and t.below[v] <= used)
        used.add(v)
        word.append(v)
    return Permutation(tuple(word))


def class_minimum(t: Permutree) -> Permutation:
    return _greedy_extension(t, largest=False)


def class_maximum(t: Permutree) -> Permutation:
    return _greedy_extension(t, largest=True)


def class_equiv(p: PermLike, q: PermLike, delta: str) -> bool:
    """Connectivity under the local moves ``ac..b <-> ca..b`` (``b`` down) and ``b..ac <-> b..ca`` (``b`` up)."""
    p, q = perm(p), perm(q)
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return q in congruence_class(p, delta)


def _moves(w: tuple[int, ...], delta: str) -> Iterator[tuple[int, ...]]:
    n = len(w)
    for i in range(n - 1):
        a, c = sorted((w[i], w[i + 1]))
        right = w[i + 2 :]
        left = w[:i]
        ok = any(a < b < c and delta[b - 1] in DOWN for b in right)
        ok = ok or any(a < b < c and delta[b - 1] in UP for b in left)
        if ok:
            yield w[:i] + (w[i + 1], w[i]) + w[i + 2 :]


def congruence_class(p: PermLike, delta: str) -> set[Permutation]:
    """The class of ``p`` by closure of the local rewriting moves."""
    p = perm(p)
    delta = check_decoration(delta)
    seen = {p.word}
    stack = [p.word]
    while stack:
        w = stack.pop()
        for x in _moves(w, delta):
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return {Permutation(w) for w in seen}


def _pattern_sets(word: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Values ``b`` occurring in a ``c..a..b`` subword and in a ``b..c..a`` subword (``a < b < c``)."""
    n = len(word)
    down, up = set(), set()
    for j in range(n):
        b = word[j]
        before, after = word[:j], word[j + 1 :]
        # c..a before b
        seen_big = False
        for x in before:
            if x > b:
                seen_big = True
            elif x < b and seen_big:
                down.add(b)
                break
        seen_big = False
        for x in after:
            if x > b:
                seen_big = True
            elif x < b and seen_big:
                up.add(b)
                break
    return frozenset(down), frozenset(up)


def is_minimal(p: PermLike, delta: str) -> bool:
    """Avoids ``cab`` with ``δ_b`` in {D, B} and ``bca`` with ``δ_b`` in {U, B}."""
    p = perm(p)
    delta = check_decoration(delta)
    if p.n != len(delta):
        raise ValueError("size mismatch")
    down, up = _pattern_sets(p.word)
    return not any(delta[b - 1] in DOWN for b in down) and not any(delta[b - 1] in UP for b in up)


@lru_cache(maxsize=None)
def count(delta: str) -> int:
    """Factorial-Catalan number by the deletion and splitting recursion."""
    delta = check_decoration(delta)
    if not delta:
        return 1
    if "B" in delta:
        i = delta.index("B")
        return count(delta[:i] + "N") * count("N" + delta[i + 1 :])
    total = 0
    for i, sym in enumerate(delta):
        if sym == "N":
            total += count(delta[:i] + delta[i + 1 :])
        else:
            total += count(delta[:i]) * count(delta[i + 1 :])
    return total


def count_by_classes(delta: str) -> int:
    """Number of distinct insertion results over all permutations."""
    delta = check_decoration(delta)
    return len({insert(p, delta).edges for p in permutations(len(delta))})


@lru_cache(maxsize=None)
def _pattern_census(n: int) -> dict[tuple[int, int], int]:
    """Permutations grouped by the bitmasks of their down and up pattern witnesses."""
    out: dict[tuple[int, int], int] = {}
    for w in itertools.permutations(range(1, n + 1)):
        down, up = _pattern_sets(w)
        key = (sum(1 << b for b in down), sum(1 << b for b in up))
        out[key] = out.get(key, 0) + 1
    return out


def count_minimal(delta: str) -> int:
    """Number of class-minimal permutations."""
    delta = check_decoration(delta)
    dmask = sum(1 << v for v in range(1, len(delta) + 1) if delta[v - 1] in DOWN)
    umask = sum(1 << v for v in range(1, len(delta) + 1) if delta[v - 1] in UP)
    return sum(c for (d, u), c in _pattern_census(len(delta)).items() if not d & dmask and not u & umask)


def _component_sizes(t: Permutree, i: int) -> dict[int, int]:
    """For each neighbor ``u`` of ``i``, the size of the component of ``u`` once ``i`` is removed."""
    adj: dict[int, set[int]] = {v: set() for v in range(1, t.n + 1)}
    for u, v in t.edges:
        adj[u].add(v)
        adj[v].add(u)
    out = {}
    for u in adj[i]:
        seen = {i, u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out[u] = len(seen) - 1
    return out


def coordinates(t: Permutree) -> tuple[int, ...]:
    """Vertex of the permutreehedron; subtree sizes are taken through each incident edge."""
    out = []
    for i in range(1, t.n + 1):
        sym = t.decoration[i - 1]
        sizes = _component_sizes(t, i)
        children = [u for u in sizes if (u, i) in t.edges]
        parents = [v for v in sizes if (i, v) in t.edges]
        left_down = sum(sizes[u] for u in children if u < i)
        right_down = sum(sizes[u] for u in children if u > i)
        left_up = sum(sizes[v] for v in parents if v < i)
        right_up = sum(sizes[v] for v in parents if v > i)
        a = 1 + left_down + right_down
        if sym in DOWN:
            a += left_down * right_down
        if sym in UP:
            a -= left_up * right_up
        out.append(a)
    return tuple(out)


def permutree_le(t: Permutree, q: Permutree) -> bool:
    return weak_le(class_minimum(t), class_minimum(q))


def permutree_meet(t: Permutree, q: Permutree) -> Permutree:
    return insert(weak_meet(class_minimum(t), class_minimum(q)), t.decoration)


def permutree_join(t: Permutree, q: Permutree) -> Permutree:
    return insert(weak_join(class_minimum(t), class_minimum(q)), t.decoration)


def _swap_adjacent(w: Sequence[int], i: int) -> Permutation:
    w = list(w)
    w[i], w[i + 1] = w[i + 1], w[i]
    return Permutation(tuple(w))


def permutree_covers(t: Permutree) -> list[Permutree]:
    """Upper covers: flip an ascent of the class maximum."""
    m = class_maximum(t).word
    return [insert(_swap_adjacent(m, i), t.decoration) for i in range(t.n - 1) if m[i] < m[i + 1]]


def permutree_lower_covers(t: Permutree) -> list[Permutree]:
    m = class_minimum(t).word
    return [insert(_swap_adjacent(m, i), t.decoration) for i in range(t.n - 1) if m[i] > m[i + 1]]


def rotate(t: Permutree, edge: tuple[int, int]) -> Permutree:
    """Rotate the edge ``(u, v)`` (``u`` below ``v``): the neighbor where ``v`` sits below ``u``."""
    u, v = edge
    if (u, v) not in t.edges:
        raise ValueError(f"{edge} is not an edge of the permutree")
    ideal = t.below[v] - {u}
    first = [x for x in _greedy_extension_restricted(t, ideal)]
    rest_set = set(range(1, t.n + 1)) - ideal - {u, v}
    rest = _greedy_extension_restricted(t, rest_set, frozenset(ideal | {u, v}))
    word = first + [v, u] + rest
    return insert(Permutation(tuple(word)), t.decoration)


def _greedy_extension_restricted(t: Permutree, nodes: Iterable[int], done: frozenset[int] = frozenset()) -> list[int]:
    todo = set(nodes)
    used = set(done)
    out = []
    while todo:
        x = min(x for x in todo if t.below[x] <= used)
        todo.remove(x)
        used.add(x)
        out.append(x)
    return out


def all_permutrees(delta: str) -> list[Permutree]:
    delta = check_decoration(delta)
    seen: dict[frozenset, Permutree] = {}
    for p in permutations(len(delta)):
        t = insert(p, delta)
        seen.setdefault(t.edges, t)
    return list(seen.values())


def reduced_words(p: PermLike) -> set[tuple[int, ...]]:
    """All reduced words ``s_{i1} ... s_{ik}`` with ``p = s_{i1} ... s_{ik}`` acting on positions."""
    return set(_reduced_words(perm(p).word))


@lru_cache(maxsize=None)
def _reduced_words(w: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    out = []
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            prev = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
            for word in _reduced_words(prev):
                out.append(word + (i + 1,))
    return tuple(out) if out else ((),)


def apply_word(word: Iterable[int], n: int) -> Permutation:
    w = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"generator s{i} out of range for n={n}")
        w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation(tuple(w))


# Automaton states are pairs (row, k): row 0 = h_k, row 1 = i_k, row 2 = d_k (rejecting, absorbing).


def _up_step(state: tuple[int, int], letter: int) -> tuple[int, int]:
    row, k = state
    if row == 0:
        if letter == k:
            return (1, k)
        if letter == k + 1:
            return (0, k + 1)
    elif row == 1 and letter == k + 1:
        return (2, k)
    return state


def _up_start(j: int) -> tuple[int, int]:
    return (0, j - 1)


def automaton_accepts(word: Sequence[int], j: int, n: int) -> bool:
    """Run the automaton ``U(j)`` on ``word``; accepting unless it reaches a ``d`` state."""
    state = _up_start(j)
    for letter in word:
        if not 1 <= letter < n:
            raise ValueError(f"generator s{letter} out of range for n={n}")
        state = _up_step(state, letter)
    return state[0] != 2


def down_automaton_accepts(word: Sequence[int], j: int, n: int) -> bool:
    """``D(j)``: the conjugate of ``U(n+1-j)`` by the longest element (``s_i -> s_{n-i}``)."""
    return automaton_accepts([n - i for i in word], n + 1 - j, n)


def _automata(delta: str, mirrored: bool) -> list[int]:
    """Indices ``j`` of the automata of one family: ``U(j)`` or, when mirrored, ``D(j)``."""
    family = DOWN if mirrored else UP
    return [j for j, sym in enumerate(delta, start=1) if sym in family]


def _start(js: list[int], n: int, mirrored: bool) -> tuple[tuple[int, int], ...]:
    return tuple(_up_start(n + 1 - j if mirrored else j) for j in js)


def _step(states: tuple[tuple[int, int], ...], letter: int, n: int, mirrored: bool) -> tuple:
    letter = n - letter if mirrored else letter
    return tuple(_up_step(s, letter) for s in states)


def _accepted(states: tuple[tuple[int, int], ...]) -> bool:
    return all(s[0] != 2 for s in states)


def minimal_by_automata(p: PermLike, delta: str) -> bool:
    """Some reduced word of ``p`` passes the product of the ``U`` automata and some passes the ``D`` product.

    Each family is run as a synchronous product on one word; the two families may
    use different words, since a ``B`` symbol can need two distinct words.
    """
    p = perm(p)
    delta = check_decoration(delta)
    n = p.n
    words = reduced_words(p)
    for mirrored in (False, True):
        js = _automata(delta, mirrored)
        start = _start(js, n, mirrored)
        found = False
        for word in words:
            states = start
            for letter in word:
                states = _step(states, letter, n, mirrored)
            if _accepted(states):
                found = True
                break
        if not found:
            return False
    return True


def _accepted_by_family(n: int, js: list[int], mirrored: bool) -> set[tuple[int, ...]]:
    """Permutations with a reduced word accepted by one product, by dynamic programming on the weak order."""
    ident = tuple(range(1, n + 1))
    reach: dict[tuple[int, ...], set[tuple]] = {ident: {_start(js, n, mirrored)}}
    layer = [ident]
    while layer:
        nxt: list[tuple[int, ...]] = []
        for w in layer:
            for i in range(n - 1):
                if w[i] < w[i + 1]:
                    x = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
                    if x not in reach:
                        reach[x] = set()
                        nxt.append(x)
                    for states in reach[w]:
                        new = _step(states, i + 1, n, mirrored)
                        if _accepted(new):
                            reach[x].add(new)
        layer = nxt
    return {w for w, states in reach.items() if states}


def minimal_set_by_automata(delta: str) -> set[Permutation]:
    """All permutations accepted in the sense of :func:`minimal_by_automata`."""
    delta = check_decoration(delta)
    n = len(delta)
    up = _accepted_by_family(n, _automata(delta, False), False)
    down = _accepted_by_family(n, _automata(delta, True), True)
    return {Permutation(w) for w in up & down}
