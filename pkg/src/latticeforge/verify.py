"""Named verification suites, one per acceptance criterion.

Each suite returns a list of :class:`Check` records; a suite passes when all
of its checks do. Suites are deterministic: random choices use a fixed seed.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import integerposets as ipo
from . import intervalposets as ivp
from . import permutrees as ptr
from . import qtstats as qt
from . import sweak as sw
from .tamari import enumerate_nu_paths, nu_tamari_covers
from .weakorder import permutations, perm, sylvester_class, sylvester_insert, weak_join, weak_meet

INTERVAL_COUNTS = {1: 1, 2: 3, 3: 13, 4: 68, 5: 399, 6: 2530}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Options:
    n: Optional[int] = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)


def _map(func: Callable, items: Iterable, jobs: int) -> list:
    """Ordered map, fanned out over processes when ``jobs > 1``."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


def tamari_counts(opts: Options) -> list[Check]:
    top = opts.n or 6
    out = []
    for n in range(1, top + 1):
        enumerated = len(ivp.all_intervals(n))
        formula = ivp.interval_formula(n)
        functional = ivp.count_intervals(n)
        expected = INTERVAL_COUNTS.get(n, formula)
        ok = enumerated == formula == functional == expected
        out.append(Check(f"intervals n={n}", ok, f"enum={enumerated} formula={formula} functional={functional}"))
    for n in range(1, min(top, 4) + 1):
        brute = sum(1 for _ in ivp.brute_force_interval_posets(n))
        out.append(Check(f"brute-force relations n={n}", brute == ivp.interval_formula(n), f"count={brute}"))
    return out


def _rise_contact_checks(n: int) -> list[str]:
    failures = []
    for p in ivp.all_intervals(n):
        b = ivp.rise_contact(p)
        if ivp.rise_contact(b) != p:
            failures.append(f"involution {p.to_json()}")
        if ivp.contact_value(p) != ivp.initial_rise(b) or ivp.initial_rise(p) != ivp.contact_value(b):
            failures.append(f"contact/initial-rise {p.to_json()}")
        if Counter(ivp.contact_vector(p)) != Counter(ivp.rise_vector(b)):
            failures.append(f"vector multisets {p.to_json()}")
        if Counter(ivp.rise_vector(p)) != Counter(ivp.contact_vector(b)):
            failures.append(f"vector multisets {p.to_json()}")
        if ivp.distance(p) != ivp.distance(b):
            failures.append(f"distance {p.to_json()}")
    return failures


def rise_contact(opts: Options) -> list[Check]:
    top = opts.n or 5
    out = []
    for n in range(1, top + 1):
        failures = _rise_contact_checks(n)
        out.append(Check(f"beta properties n={n}", not failures, "; ".join(failures[:3])))
    return out


def m_tamari(opts: Options) -> list[Check]:
    out = []
    for m, n in ((2, 2), (2, 3), (3, 2)):
        count = ivp.count_m_intervals(m, n)
        formula = ivp.m_interval_formula(m, n)
        out.append(Check(f"m-intervals m={m} n={n}", count == formula, f"enum={count} formula={formula}"))
    m = 2
    for n in range(1, (opts.n or 3) + 1):
        failures = []
        for p in ivp.all_m_intervals(m, n):
            b = ivp.m_rise_contact(p, m)
            if not ivp.is_m_interval(b, m) or ivp.m_rise_contact(b, m) != p:
                failures.append(f"involution {p.to_json()}")
            if Counter(ivp.m_contact_vector(p, m)) != Counter(ivp.m_rise_vector(b, m)):
                failures.append(f"exchange {p.to_json()}")
            if Counter(ivp.m_rise_vector(p, m)) != Counter(ivp.m_contact_vector(b, m)):
                failures.append(f"exchange {p.to_json()}")
        out.append(Check(f"beta_m properties m={m} n={n}", not failures, "; ".join(failures[:3])))
    return out


ZETA_EXAMPLE = "01211123301101221"
ZETA_IMAGE = (0, 0, 1, 2, 2, 2, 0, 1, 2, 3, 4, 5, 6, 5, 5, 6, 3)


def zeta(opts: Options) -> list[Check]:
    out = []
    for n in range(0, (opts.n or 9) + 1):
        seqs = list(qt.enumerate_area_sequences(n))
        images = [qt.zeta_inverse(a) for a in seqs]
        bij = len(set(images)) == len(seqs) and all(qt.is_area_sequence(b) for b in images)
        stats = all(
            qt.dinv(b) == qt.area(a) and qt.area(b) == qt.bounce(qt.area_to_dyck(a)) for a, b in zip(seqs, images)
        )
        out.append(Check(f"zeta-inverse n={n}", bij and stats, f"sequences={len(seqs)} bijective={bij} stats={stats}"))
    image = qt.zeta_inverse(qt.parse_area(ZETA_EXAMPLE))
    out.append(Check("worked example", image == ZETA_IMAGE, " ".join(map(str, image))))
    return out


def _bound(elems: list, le: Callable, x, y, upper: bool):
    cands = [z for z in elems if (le(x, z) and le(y, z) if upper else le(z, x) and le(z, y))]
    best = [z for z in cands if all((le(z, w) if upper else le(w, z)) for w in cands)]
    return best[0] if len(best) == 1 else None


def integer_posets(opts: Options) -> list[Check]:
    n = opts.n or 3
    posets = ipo.all_posets(n)
    out = [Check(f"posets n={n}", n != 3 or len(posets) == 19, f"count={len(posets)}")]
    le = ipo.rel_weak_le
    bad = 0
    for x in posets:
        for y in posets:
            if ipo.poset_meet(x, y) != _bound(posets, le, x, y, False):
                bad += 1
            if ipo.poset_join(x, y) != _bound(posets, le, x, y, True):
                bad += 1
    out.append(Check("meet/join equal bound oracle", bad == 0, f"mismatches={bad}"))
    toip = [p for p in posets if ipo.is_toip(p)]
    closed = all(ipo.is_toip(ipo.poset_meet(x, y)) and ipo.is_toip(ipo.poset_join(x, y)) for x in toip for y in toip)
    out.append(Check("TOIP meet/join closed", closed and (n != 3 or len(toip) == 13), f"count={len(toip)}"))
    woep = {p for p in posets if ipo.is_woep(p)}
    perms = list(permutations(n))
    image = {p: ipo.permutation_poset(p.word) for p in perms}
    iso = set(image.values()) == woep and all(
        le(image[p], image[q]) == (p.inversion_set <= q.inversion_set) for p in perms for q in perms
    )
    out.append(Check("WOEP isomorphic to weak order", iso, f"count={len(woep)}"))
    return out


def _delta_census(delta: str) -> tuple[str, bool, bool]:
    """Class-enumeration count and coordinate sums for one decoration."""
    n = len(delta)
    trees: dict = {}
    for p in permutations(n):
        t = ptr.insert(p, delta)
        trees.setdefault(t.edges, t)
    sums_ok = all(sum(ptr.coordinates(t)) == n * (n + 1) // 2 for t in trees.values())
    return delta, len(trees) == ptr.count(delta), sums_ok


def _automaton_ok(delta: str) -> bool:
    n = len(delta)
    pattern = {p for p in permutations(n) if ptr.is_minimal(p, delta)}
    return pattern == ptr.minimal_set_by_automata(delta)


def permutrees(opts: Options) -> list[Check]:
    top = opts.n or 6
    out = [
        Check("F(NNDN) = 18", ptr.count("NNDN") == 18, str(ptr.count("NNDN"))),
        Check("F(NBUN) = 10", ptr.count("NBUN") == 10, str(ptr.count("NBUN"))),
    ]
    deltas = [d for n in range(1, top + 1) for d in ptr.all_decorations(n)]
    census = _map(_delta_census, deltas, opts.jobs)
    bad_count = [d for d, ok, _ in census if not ok]
    bad_sums = [d for d, _, ok in census if not ok]
    out.append(Check(f"recursion = class count, length <= {top}", not bad_count, ",".join(bad_count[:5])))
    out.append(Check(f"coordinate sums n(n+1)/2, n <= {top}", not bad_sums, ",".join(bad_sums[:5])))
    small = [d for n in range(1, min(top, 5) + 1) for d in ptr.all_decorations(n)]
    bad_auto = [d for d, ok in zip(small, _map(_automaton_ok, small, opts.jobs)) if not ok]
    out.append(Check("automaton = pattern minimality, n <= 5", not bad_auto, ",".join(bad_auto[:5])))
    coords = ptr.coordinates(ptr.insert("2751346", "DUNBNDU"))
    out.append(Check("example coordinates", coords == (7, -4, 3, 8, 1, 12, 1), str(coords)))
    return out


def _random_s(rng: random.Random, limit: int) -> tuple[int, ...]:
    while True:
        s = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 6)))
        if sw.count(s) <= limit:
            return s


def _lattice_oracle(s: tuple[int, ...]) -> int:
    trees = list(sw.enumerate_trees(s))
    inv = {t: sw.tree_inversions(t) for t in trees}

    def le(x, y):
        return all(inv[x][k] <= inv[y][k] for k in inv[x])

    bad = 0
    for x in trees:
        for y in trees:
            if sw.s_join(x, y) != _bound(trees, le, x, y, True) or sw.s_meet(x, y) != _bound(trees, le, x, y, False):
                bad += 1
    return bad


def _nu_isomorphic(s: tuple[int, ...]) -> bool:
    """The path map is a bijection carrying s-Tamari covers onto nu-Tamari covers."""
    tam = sw.s_tamari_trees(s)
    image = {t: sw.s_tamari_to_nu_path(t) for t in tam}
    nu = sw.nu_of(s)
    paths = list(enumerate_nu_paths(nu))
    if sorted(image.values()) != sorted(p.path for p in paths):
        return False
    covers = set()
    for x in tam:
        ups = [y for y in tam if y != x and sw.s_weak_le(x, y)]
        for y in ups:
            if not any(z != y and sw.s_weak_le(z, y) for z in ups):
                covers.add((image[x], image[y]))
    return covers == {(p.path, q.path) for p in paths for q in nu_tamari_covers(p)}


S_TAMARI_CASES = ((0, 2, 3), (1, 1, 1), (2, 2, 2), (1, 2, 1), (0, 2, 2), (1, 1, 1, 1), (0, 0, 2, 1), (2, 1, 3))


def s_weak(opts: Options) -> list[Check]:
    rng = random.Random(20260)
    out = []
    bad = []
    sizes = []
    for _ in range(20):
        s = _random_s(rng, 5000)
        sizes.append(sw.count(s))
        if sum(1 for _ in sw.enumerate_trees(s)) != sw.count(s):
            bad.append(str(s))
    out.append(Check("count formula, 20 random s", not bad, f"sizes={sizes} {' '.join(bad)}".strip()))
    for s in ((0, 2, 3), (1, 1, 1, 1)):
        mism = _lattice_oracle(s)
        out.append(Check(f"meet/join bound oracle s={s}", mism == 0, f"mismatches={mism}"))
    for s in S_TAMARI_CASES:
        tam = sw.s_tamari_trees(s)
        tset = set(tam)
        closed = all(sw.s_join(x, y) in tset and sw.s_meet(x, y) in tset for x in tam for y in tam)
        out.append(Check(f"s-Tamari closed and nu-isomorphic s={s}", closed and _nu_isomorphic(s), f"size={len(tam)}"))
    pure = sw.all_pure_intervals((0, 2, 2))
    closed = all(
        (x := sw.pure_intersect(a, b)) is None or x in pure for a in pure for b in pure
    )
    out.append(Check("pure intersections s=(0,2,2)", closed, f"pure intervals={len(pure)}"))
    return out


def _classical_qt_catalan(n: int) -> qt.Poly:
    out: qt.Poly = {}
    for a in qt.enumerate_area_sequences(n):
        key = (qt.area(a), qt.dinv(a))
        out[key] = out.get(key, 0) + 1
    return out


def qt_statistics(opts: Options) -> list[Check]:
    out = []
    for n in range(1, (opts.n or 8) + 1):
        p = qt.qt_distribution(qt.staircase(n), "area", "sim")
        ok = p == _classical_qt_catalan(n) and qt.is_symmetric(p)
        out.append(Check(f"staircase q,t-Catalan n={n}", ok, f"terms={len(p)}"))
    bad = []
    total = 0
    for size in range(1, 13):
        for lam in qt.triangular_partitions(size):
            total += 1
            theta = qt.triangular_tableau(lam)
            for mu in qt.sub_partitions(lam):
                inside = set(qt.cells(mu))
                if qt.deficit_cells(lam, mu, theta) != inside - qt.sim_cells(lam, mu):
                    bad.append(f"{lam}/{mu}")
    out.append(Check("deficit = non-sim, |lambda| <= 12", not bad, f"partitions={total} {' '.join(bad[:3])}"))
    subs = sum(1 for _ in qt.sub_partitions((3, 2, 2, 1)))
    out.append(Check("(3,2,2,1) has 23 sub-partitions", subs == 23, str(subs)))
    schur = qt.schur_expand(qt.qt_distribution(qt.staircase(3)))
    out.append(
        Check("Schur expansion n=3", schur == {(3, 0): 1, (1, 1): 1} and all(c >= 0 for c in schur.values()), str(schur))
    )
    return out


def coherence(opts: Options) -> list[Check]:
    out = []
    for n in range(1, (opts.n or 5) + 1):
        delta = "D" * n
        bst: dict = {}
        pt: dict = {}
        for p in permutations(n):
            bst.setdefault(sylvester_insert(p), set()).add(p)
            pt.setdefault(ptr.insert(p, delta).edges, set()).add(p)
        a = sorted(sorted(str(x) for x in c) for c in bst.values())
        b = sorted(sorted(str(x) for x in c) for c in pt.values())
        moves = sorted(sorted(str(x) for x in ptr.congruence_class(min(c, key=str), delta)) for c in bst.values())
        fibers = all(sylvester_class(t) == c for t, c in bst.items())
        out.append(Check(f"sylvester = permutree D^n = congruence classes n={n}", a == b == moves and fibers, f"classes={len(a)}"))
    meet, join = weak_meet("3214", "3142"), weak_join("3214", "3142")
    out.append(Check("weak meet/join example", meet == perm("3124") and join == perm("3421"), f"meet={meet} join={join}"))
    return out


SUITES: dict[str, tuple[int, Callable[[Options], list[Check]]]] = {
    "tamari-counts": (1, tamari_counts),
    "rise-contact": (2, rise_contact),
    "m-tamari": (3, m_tamari),
    "zeta": (4, zeta),
    "integer-posets": (5, integer_posets),
    "permutrees": (6, permutrees),
    "s-weak": (7, s_weak),
    "qt-statistics": (8, qt_statistics),
    "coherence": (9, coherence),
}


def run_suite(name: str, opts: Optional[Options] = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name][1](opts or Options())
