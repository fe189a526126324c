"""Area sequences, the zeta insertion bijection, triangular partitions and q,t enumerations.

Partitions are weakly decreasing tuples; cells are ``(x, y)`` with row ``y``
(``0`` at the bottom) of length ``λ_y``. Bivariate polynomials are dicts
``{(i, j): c}`` for ``c q^i t^j``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

Cell = tuple[int, int]
Poly = dict[tuple[int, int], int]
Partition = tuple[int, ...]


def is_area_sequence(a: Sequence[int]) -> bool:
    if not a:
        return True
    return a[0] == 0 and all(0 <= a[i + 1] <= a[i] + 1 for i in range(len(a) - 1))


def _check_area(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not is_area_sequence(a):
        raise ValueError(f"not an area sequence: {list(a)}")
    return a


def parse_area(text: str) -> tuple[int, ...]:
    """Digits (``012``) or comma-separated values."""
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    return _check_area([int(x) for x in parts if x.strip()])


def area(a: Sequence[int]) -> int:
    return sum(_check_area(a))


def dinv(a: Sequence[int]) -> int:
    a = _check_area(a)
    return sum(1 for i, j in itertools.combinations(range(len(a)), 2) if a[j] in (a[i], a[i] - 1))


def enumerate_area_sequences(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(prefix[-1] + 1, -1, -1):
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([0])


def area_to_dyck(a: Sequence[int]) -> str:
    """``a_i`` is the height at the start of the ``i``-th up step."""
    a = _check_area(a)
    out = []
    h = 0
    for v in a:
        out.append("0" * (h - v) + "1")
        h = v + 1
    out.append("0" * h)
    return "".join(out)


def dyck_to_area(d: str) -> tuple[int, ...]:
    out = []
    h = 0
    for ch in d:
        if ch == "1":
            out.append(h)
            h += 1
        elif ch == "0":
            h -= 1
        else:
            raise ValueError(f"malformed Dyck path {d!r}")
        if h < 0:
            raise ValueError(f"malformed Dyck path {d!r}")
    if h:
        raise ValueError(f"malformed Dyck path {d!r}")
    return tuple(out)


def bounce(d: str) -> int:
    """Haglund's bounce: go north until the path turns east, then east to the diagonal, and repeat.

    Each intermediate diagonal touch at ``(j, j)`` contributes ``n - j``.
    """
    n = len(dyck_to_area(d))
    norths_before_east = []
    ups = 0
    for ch in d:
        if ch == "1":
            ups += 1
        else:
            norths_before_east.append(ups)
    total = 0
    j = 0
    while j < n:
        j = norths_before_east[j]
        if j < n:
            total += n - j
    return total


def insert(a: Sequence[int], i: int) -> tuple[int, ...]:
    """Insert ``a_i + 1`` after position ``i`` (1-based); ``i = 0`` prepends ``0``."""
    a = _check_area(a)
    if not 0 <= i <= len(a):
        raise ValueError(f"insertion position {i} out of range 0..{len(a)}")
    out = (0,) + a if i == 0 else a[:i] + (a[i - 1] + 1,) + a[i:]
    return _check_area(out)


def _dinv_gain(b: Sequence[int], q: int, y: int) -> int:
    """Increase of dinv when value ``y`` is placed at index ``q`` of ``b``."""
    return sum(1 for v in b[:q] if v in (y, y + 1)) + sum(1 for v in b[q:] if v in (y, y - 1))


def insertion_points(b: Sequence[int], last_value: int, last_index: int) -> dict[int, tuple[int, int]]:
    """Map from dinv gain to ``(index, value)`` for admissible insertions.

    The last inserted value may be repeated, placed after a smaller-by-one value
    and not left of the previous insertion; the value one above may follow any
    copy of the last value.
    """
    out: dict[int, tuple[int, int]] = {}
    x = last_value
    for q in range(len(b) + 1):
        before = b[q - 1] if q else None
        if q >= last_index and (before == x - 1 or (x == 0 and q == 0)):
            out.setdefault(_dinv_gain(b, q, x), (q, x))
        if before == x:
            out.setdefault(_dinv_gain(b, q, x + 1), (q, x + 1))
    return out


def zeta_inverse(a: Sequence[int], trace: Optional[list] = None) -> tuple[int, ...]:
    """Read ``a`` left to right, inserting where dinv rises by exactly the value read."""
    a = _check_area(a)
    if not a:
        return ()
    b = [0]
    x, p = 0, 0
    if trace is not None:
        trace.append(tuple(b))
    for v in a[1:]:
        points = insertion_points(b, x, p)
        if v not in points:
            raise ValueError(f"no insertion point with gain {v} in {b}")
        p, x = points[v]
        b.insert(p, x)
        if trace is not None:
            trace.append(tuple(b))
    return tuple(b)


def zeta(b: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`zeta_inverse`, inverted by exhaustive lookup at the given length."""
    b = _check_area(b)
    return _zeta_table(len(b))[b]


@lru_cache(maxsize=None)
def _zeta_table(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    return {zeta_inverse(a): a for a in enumerate_area_sequences(n)}


# Partitions


def check_partition(lam: Iterable[int]) -> Partition:
    lam = tuple(int(x) for x in lam)
    if any(x <= 0 for x in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {list(lam)}")
    return lam


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()[]")
    return check_partition(int(x) for x in text.split(",") if x.strip()) if text else ()


def conjugate(lam: Sequence[int]) -> Partition:
    return tuple(sum(1 for r in lam if r > x) for x in range(lam[0])) if lam else ()


def cells(lam: Sequence[int]) -> list[Cell]:
    return [(x, y) for y, r in enumerate(lam) for x in range(r)]


def partitions(n: int, largest: Optional[int] = None) -> Iterator[Partition]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for v in range(min(n, largest), 0, -1):
        for rest in partitions(n - v, v):
            yield (v,) + rest


def sub_partitions(lam: Sequence[int]) -> Iterator[Partition]:
    """All ``μ ⊆ λ``, largest first."""
    lam = check_partition(lam)

    def rec(i: int, bound: int) -> Iterator[tuple[int, ...]]:
        if i == len(lam):
            yield ()
            return
        for v in range(min(lam[i], bound), -1, -1):
            for rest in rec(i + 1, v):
                yield (v,) + rest

    for mu in rec(0, lam[0] if lam else 0):
        yield tuple(v for v in mu if v)


def slope_window(lam: Sequence[int]) -> Optional[tuple[Fraction, Optional[Fraction]]]:
    """Open interval of slopes ``ρ > 0`` for which ``λ`` is exactly the cells with ``x + ρy`` below a cut.

    Compares top-right corners of removable cells with those of addable cells;
    ``None`` when infeasible, upper end ``None`` when unbounded.
    """
    lam = check_partition(lam)
    inner = [(lam[y], y + 1) for y in range(len(lam))]
    outer = [((lam[y] if y < len(lam) else 0) + 1, y + 1) for y in range(len(lam) + 1)]
    lo, hi = Fraction(0), None
    for xa, ya in inner:
        for xb, yb in outer:
            d, c = ya - yb, xb - xa
            if d == 0:
                if c <= 0:
                    return None
            elif d > 0:
                v = Fraction(c, d)
                hi = v if hi is None else min(hi, v)
            else:
                lo = max(lo, Fraction(c, d))
    if hi is not None and lo >= hi:
        return None
    return lo, hi


def is_triangular(lam: Sequence[int]) -> bool:
    return slope_window(lam) is not None


def triangular_partitions(n: int) -> Iterator[Partition]:
    return (lam for lam in partitions(n) if is_triangular(lam))


def mean_slope(lam: Sequence[int]) -> Fraction:
    """Midpoint of the slope window, or one past its lower end when unbounded."""
    window = slope_window(lam)
    if window is None:
        raise ValueError(f"partition {list(lam)} is not triangular")
    lo, hi = window
    return lo + 1 if hi is None else (lo + hi) / 2


def hook(mu: Sequence[int], cell: Cell) -> tuple[int, int]:
    """Arm and leg of ``cell`` inside ``μ``."""
    x, y = cell
    return mu[y] - x - 1, conjugate(mu)[x] - y - 1


def is_sim_cell(mu: Sequence[int], cell: Cell, tau: Fraction) -> bool:
    arm, leg = hook(mu, cell)
    return Fraction(arm, leg + 1) < tau and (leg == 0 or tau <= Fraction(arm + 1, leg))


def sim_cells(lam: Sequence[int], mu: Sequence[int]) -> set[Cell]:
    lam = check_partition(lam)
    mu = _check_sub(lam, mu)
    tau = mean_slope(lam)
    return {c for c in cells(mu) if is_sim_cell(mu, c, tau)}


def sim(lam: Sequence[int], mu: Sequence[int]) -> int:
    return len(sim_cells(lam, mu))


def _check_sub(lam: Partition, mu: Sequence[int]) -> Partition:
    mu = check_partition(mu)
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        raise ValueError(f"{list(mu)} is not contained in {list(lam)}")
    return mu


Tableau = dict[Cell, int]


def triangular_tableau(lam: Sequence[int]) -> Tableau:
    """Number cells in the order a line of slightly perturbed mean slope meets them."""
    lam = check_partition(lam)
    tau = mean_slope(lam)
    order = sorted(cells(lam), key=lambda c: (c[0] + 1 + tau * (c[1] + 1), -(c[1] + 1)))
    return {c: i for i, c in enumerate(order, start=1)}


def tableau_rows(theta: Tableau) -> list[list[int]]:
    rows: list[list[int]] = []
    for (x, y), v in sorted(theta.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        while len(rows) <= y:
            rows.append([])
        rows[y].append(v)
    return rows


def tableau_from_rows(rows: Sequence[Sequence[int]]) -> Tableau:
    theta = {(x, y): int(v) for y, row in enumerate(rows) for x, v in enumerate(row)}
    if not is_standard(theta):
        raise ValueError("rows do not form a standard Young tableau")
    return theta


def is_standard(theta: Tableau) -> bool:
    shape = tuple(len(r) for r in tableau_rows(theta))
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        return False
    if sorted(theta.values()) != list(range(1, len(theta) + 1)):
        return False
    return all(
        theta.get((x + 1, y), v + 1) > v and theta.get((x, y + 1), v + 1) > v for (x, y), v in theta.items()
    )


def standard_tableaux(lam: Sequence[int]) -> Iterator[Tableau]:
    """Fill cells with ``1..|λ|`` by repeatedly adding an outer corner."""
    lam = check_partition(lam)
    total = sum(lam)

    def rec(filled: list[int], theta: Tableau, k: int) -> Iterator[Tableau]:
        if k > total:
            yield dict(theta)
            return
        for y in range(len(lam)):
            x = filled[y]
            if x < lam[y] and (y == 0 or filled[y - 1] > x):
                theta[(x, y)] = k
                filled[y] += 1
                yield from rec(filled, theta, k + 1)
                filled[y] -= 1
                del theta[(x, y)]

    return rec([0] * len(lam), {}, 1)


def deficit_cells(lam: Sequence[int], mu: Sequence[int], theta: Tableau) -> set[Cell]:
    """Hook cells ``(min x, min y)`` of pairs ``c ∈ μ``, ``c' ∉ μ`` with ``θ(c) > θ(c')``."""
    lam = check_partition(lam)
    mu = _check_sub(lam, mu)
    if set(theta) != set(cells(lam)):
        raise ValueError("tableau shape does not match the partition")
    inside = cells(mu)
    inside_set = set(inside)
    outside = [c for c in cells(lam) if c not in inside_set]
    return {
        (min(c[0], d[0]), min(c[1], d[1])) for c in inside for d in outside if theta[c] > theta[d]
    }


def theta_sim(lam: Sequence[int], mu: Sequence[int], theta: Tableau) -> int:
    """Cells of ``μ`` that are not deficit cells for ``θ``."""
    return sum(check_partition(mu)) - len(deficit_cells(lam, mu, theta))


# Distributions and Schur expansion


def staircase(n: int) -> Partition:
    return tuple(range(n - 1, 0, -1))


def staircase_area_sequence(lam: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    """For the staircase of size ``n``: ``a_1 = 0`` and ``a_i = λ_y - μ_y`` with ``y = n - i``."""
    n = len(lam) + 1
    m = list(mu) + [0] * (len(lam) - len(mu))
    return (0,) + tuple(lam[y] - m[y] for y in range(n - 2, -1, -1))


def statistic(name: str, theta: Optional[Tableau] = None) -> Callable[[Partition, Partition], int]:
    """``area``, ``sim``, ``deficit`` or ``theta-sim``; the last two use ``θ`` (default triangular)."""
    if name == "area":
        return lambda lam, mu: sum(lam) - sum(mu)
    if name == "sim":
        return sim

    def tab(lam: Partition) -> Tableau:
        return theta if theta is not None else triangular_tableau(lam)

    if name == "deficit":
        return lambda lam, mu: len(deficit_cells(lam, mu, tab(lam)))
    if name == "theta-sim":
        return lambda lam, mu: theta_sim(lam, mu, tab(lam))
    raise ValueError(f"unknown statistic {name!r}")


def qt_distribution(
    lam: Sequence[int], qstat: str = "area", tstat: str = "sim", theta: Optional[Tableau] = None
) -> Poly:
    lam = check_partition(lam)
    fq, ft = statistic(qstat, theta), statistic(tstat, theta)
    out: Poly = {}
    for mu in sub_partitions(lam):
        key = (fq(lam, mu), ft(lam, mu))
        out[key] = out.get(key, 0) + 1
    return out


def is_symmetric(p: Poly) -> bool:
    return all(p.get((j, i), 0) == c for (i, j), c in p.items())


def is_sim_sym(lam: Sequence[int], theta: Tableau) -> bool:
    return is_symmetric(qt_distribution(lam, "area", "theta-sim", theta))


def schur_polynomial(a: int, b: int) -> Poly:
    """Two-variable ``s_(a,b)(q, t) = sum_{k=b..a} q^k t^(a+b-k)``."""
    if a < b or b < 0:
        raise ValueError(f"({a},{b}) is not a partition")
    return {(k, a + b - k): 1 for k in range(b, a + 1)}


def schur_expand(p: Poly) -> dict[tuple[int, int], int]:
    """Coefficients ``c_(a,b)`` with ``p = sum c_(a,b) s_(a,b)``, found by peeling top q-degrees."""
    if not is_symmetric(p):
        raise ValueError("polynomial is not symmetric in q and t")
    rest = {k: c for k, c in p.items() if c}
    out: dict[tuple[int, int], int] = {}
    while rest:
        i, j = max(rest, key=lambda k: (k[0] + k[1], k[0]))
        c = rest[(i, j)]
        out[(i, j)] = c
        for key in schur_polynomial(i, j):
            rest[key] = rest.get(key, 0) - c
            if not rest[key]:
                del rest[key]
    return dict(sorted(out.items(), reverse=True))


def schur_combination(coeffs: dict[tuple[int, int], int]) -> Poly:
    out: Poly = {}
    for (a, b), c in coeffs.items():
        for key in schur_polynomial(a, b):
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def is_schur_positive(p: Poly) -> bool:
    return is_symmetric(p) and all(c >= 0 for c in schur_expand(p).values())


def poly_to_json(p: Poly) -> dict[str, int]:
    return {f"q^{i} t^{j}": c for (i, j), c in sorted(p.items(), reverse=True) if c}


def poly_from_json(data: dict[str, int]) -> Poly:
    out: Poly = {}
    for key, c in data.items():
        qpart, tpart = key.split()
        out[(int(qpart[2:]), int(tpart[2:]))] = int(c)
    return out


def poly_str(p: Poly) -> str:
    terms = []
    for (i, j), c in sorted(p.items(), reverse=True):
        mono = "*".join(x for x in (_power("q", i), _power("t", j)) if x) or "1"
        terms.append(mono if c == 1 and mono != "1" else f"{c}*{mono}" if mono != "1" else str(c))
    return " + ".join(terms) if terms else "0"


def _power(var: str, e: int) -> str:
    return "" if e == 0 else var if e == 1 else f"{var}^{e}"


# Tamari order on triangular Dyck paths


def _padded(lam: Partition, mu: Sequence[int]) -> list[int]:
    return list(mu) + [0] * (len(lam) - len(mu))


def rotation_lines(lam: Sequence[int], mu: Sequence[int]) -> list[int]:
    """Rows holding a removable corner of ``μ``."""
    lam = check_partition(lam)
    p = _padded(lam, _check_sub(lam, mu))
    return [i for i in range(len(p)) if p[i] > 0 and (i + 1 == len(p) or p[i] > p[i + 1])]


def path_tamari_rotate(lam: Sequence[int], mu: Sequence[int], line: int) -> Partition:
    """Remove the corner cell of row ``line`` and the end cell of each row above it whose skew length exceeds that row's."""
    lam = check_partition(lam)
    if line not in rotation_lines(lam, mu):
        raise ValueError(f"row {line} has no removable corner in {list(mu)}")
    p = _padded(lam, mu)
    skew = [l - m for l, m in zip(lam, p)]
    v = skew[line]
    p[line] -= 1
    i = line - 1
    while i >= 0 and skew[i] > v:
        p[i] -= 1
        i -= 1
    return check_partition(x for x in p if x)


def path_tamari_covers(lam: Sequence[int], mu: Sequence[int]) -> list[Partition]:
    return [path_tamari_rotate(lam, mu, line) for line in rotation_lines(lam, mu)]


def path_tamari_intervals(lam: Sequence[int]) -> dict[tuple[Partition, Partition], int]:
    """Every interval ``[μ, ν]`` mapped to its distance, the longest chain length."""
    lam = check_partition(lam)
    elems = list(sub_partitions(lam))
    covers = {mu: path_tamari_covers(lam, mu) for mu in elems}
    out: dict[tuple[Partition, Partition], int] = {}
    for mu in elems:
        longest = {mu: 0}
        # areas increase along covers, so processing by area is a topological order
        for nu in sorted(elems, key=lambda m: -sum(m)):
            if nu in longest:
                for up in covers[nu]:
                    longest[up] = max(longest.get(up, -1), longest[nu] + 1)
        for nu, d in longest.items():
            out[(mu, nu)] = d
    return out


def interval_qt(lam: Sequence[int], theta: Optional[Tableau] = None) -> Poly:
    """Sum of ``q^distance t^(θ-sim of the upper path)`` over all intervals."""
    lam = check_partition(lam)
    theta = theta if theta is not None else triangular_tableau(lam)
    out: Poly = {}
    cache: dict[Partition, int] = {}
    for (mu, nu), d in path_tamari_intervals(lam).items():
        if nu not in cache:
            cache[nu] = theta_sim(lam, nu, theta)
        key = (d, cache[nu])
        out[key] = out.get(key, 0) + 1
    return out
