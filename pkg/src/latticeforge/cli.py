"""Command-line front end: counting, bijections, involutions, Hasse export, q,t data and verification."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable, Iterable, Optional, Sequence

from . import integerposets as ipo
from . import intervalposets as ivp
from . import permutrees as ptr
from . import qtstats as qt
from . import sweak as sw
from .binarytree import enumerate_trees, from_parens, to_parens
from .tamari import tamari_covers
from .verify import SUITES, Options, run_suite
from .weakorder import permutations, weak_covers

EXIT_INPUT = 1
EXIT_VERIFY = 2

# Desk-scale caps on enumerated sizes, raised by LATTICEFORGE_MAXSIZE or bypassed by --force.
TREE_CAP = 8
INTERVAL_CAP = 5


class InputError(Exception):
    pass


def _cap(n: int, default: int, args: argparse.Namespace) -> None:
    env = os.environ.get("LATTICEFORGE_MAXSIZE")
    limit = default
    if env:
        try:
            limit = int(env)
        except ValueError:
            raise InputError(f"LATTICEFORGE_MAXSIZE must be an integer, got {env!r}") from None
    if n > limit and not args.force:
        raise InputError(f"size {n} exceeds the cap {limit}; pass --force or set LATTICEFORGE_MAXSIZE")


def _int(text: str, what: str) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise InputError(f"{what} must be an integer, got {text!r}") from None
    if value < 0:
        raise InputError(f"{what} must be nonnegative, got {value}")
    return value


def parse_s(text: str) -> tuple[int, ...]:
    """``0,2,3`` or, for single digits, ``023``."""
    parts = text.split(",") if "," in text else list(text)
    try:
        return sw.check_s(int(x) for x in parts if x.strip())
    except ValueError as exc:
        raise InputError(f"bad weak composition {text!r}: {exc}") from None


def _load_json(text: str):
    if text == "-":
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON input: {exc}") from None


def _interval(text: str) -> ivp.IntervalPoset:
    try:
        p = ivp.IntervalPoset.from_json(_load_json(text))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid interval-poset: {exc}") from None
    if not ivp.is_interval_poset(p):
        raise InputError("input is not an interval-poset")
    return p


def _grafting(text: str) -> ivp.GraftingTree:
    try:
        return ivp.GraftingTree.from_json(_load_json(text))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid grafting tree: {exc}") from None


def _value(args: argparse.Namespace, name: str, index: int, what: str) -> str:
    flag = getattr(args, name, None)
    if flag is not None:
        return str(flag)
    if len(args.values) > index:
        return args.values[index]
    raise InputError(f"missing {what}")


# Output


def _csv_cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


def render(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    if fmt == "csv":
        if not rows:
            return ""
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _csv_cell(v) for k, v in r.items()})
        return buf.getvalue()
    raise InputError(f"format {fmt!r} is not available for this command")


def _dot(name: str, nodes: Sequence[str], edges: Iterable[tuple[str, str]]) -> str:
    index = {v: i for i, v in enumerate(nodes)}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  n{i} [label={json.dumps(v)}];" for v, i in index.items()]
    lines += [f"  n{index[a]} -> n{index[b]};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


# Subcommands


def cmd_count(args: argparse.Namespace) -> list[dict]:
    what = args.what
    if what == "tamari-intervals":
        n = _int(_value(args, "n", 0, "n"), "n")
        if args.enumerate:
            _cap(n, INTERVAL_CAP, args)
            value = len(ivp.all_intervals(n))
        else:
            value = ivp.count_intervals(n)
        return [{"object": what, "n": n, "count": value}]
    if what == "m-intervals":
        m = _int(_value(args, "m", 0, "m"), "m")
        n = _int(_value(args, "n", 1, "n"), "n")
        if m < 1:
            raise InputError("m must be positive")
        if args.enumerate:
            _cap(m * n, INTERVAL_CAP + 1, args)
            value = ivp.count_m_intervals(m, n)
        else:
            value = ivp.m_interval_formula(m, n)
        return [{"object": what, "m": m, "n": n, "count": value}]
    if what == "permutrees":
        delta = _value(args, "decoration", 0, "decoration")
        try:
            delta = ptr.check_decoration(delta)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if args.enumerate:
            _cap(len(delta), TREE_CAP, args)
            value = ptr.count_by_classes(delta)
        else:
            value = ptr.count(delta)
        return [{"object": what, "decoration": delta, "count": value}]
    if what == "s-trees":
        s = parse_s(_value(args, "s", 0, "s"))
        if args.enumerate:
            _cap(len(s), TREE_CAP, args)
            value = sum(1 for _ in sw.enumerate_trees(s))
        else:
            value = sw.count(s)
        return [{"object": what, "s": list(s), "count": value}]
    if what == "triangular":
        n = _int(_value(args, "n", 0, "n"), "n")
        return [{"object": what, "n": n, "count": sum(1 for _ in qt.triangular_partitions(n))}]
    raise InputError(f"unknown count target {what!r}")


def _m(args: argparse.Namespace) -> int:
    if args.m is None or args.m < 1:
        raise InputError("--m must be a positive integer")
    return args.m


def cmd_map(args: argparse.Namespace) -> list[dict]:
    kind, values = args.kind, args.values
    if not values:
        raise InputError("missing input")
    try:
        if kind == "interval-to-trees":
            lo, hi = ivp.to_tree_pair(_interval(values[0]))
            return [{"lower": to_parens(lo), "upper": to_parens(hi)}]
        if kind == "trees-to-interval":
            if len(values) != 2:
                raise InputError("expected LOWER UPPER trees in (L)R notation")
            lo, hi = from_parens(values[0]), from_parens(values[1])
            from .tamari import tamari_le

            if not tamari_le(lo, hi):
                raise InputError("lower tree is not below upper tree")
            return [{"interval": ivp.from_tree_pair(lo, hi).to_json()}]
        if kind == "interval-to-grafting":
            return [{"grafting": ivp.to_grafting(_interval(values[0])).to_json()}]
        if kind == "grafting-to-interval":
            return [{"interval": ivp.from_grafting(_grafting(values[0])).to_json()}]
        if kind == "zeta-inverse":
            a = qt.parse_area(values[0])
            return [{"input": list(a), "output": list(qt.zeta_inverse(a))}]
        if kind == "zeta":
            b = qt.parse_area(values[0])
            return [{"input": list(b), "output": list(qt.zeta(b))}]
        if kind == "expand":
            return [{"grafting": ivp.expand(_grafting(values[0]), _m(args)).to_json()}]
        if kind == "contract":
            return [{"grafting": ivp.contract(_grafting(values[0]), _m(args)).to_json()}]
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown map {kind!r}")


INVOLUTIONS: dict[str, Callable] = {
    "psi": ivp.complement,
    "phi": ivp.left_branch,
    "beta": ivp.rise_contact,
}


def cmd_invol(args: argparse.Namespace) -> list[dict]:
    if args.which == "beta-m":
        m = _m(args)

        def func(p):
            return ivp.m_rise_contact(p, m)
    else:
        func = INVOLUTIONS[args.which]
    if args.interval is not None:
        inputs = [_interval(args.interval)]
    elif args.n is not None:
        if args.which == "beta-m":
            _cap(args.m * args.n, INTERVAL_CAP + 1, args)
            inputs = ivp.all_m_intervals(args.m, args.n)
        else:
            _cap(args.n, INTERVAL_CAP, args)
            inputs = ivp.all_intervals(args.n)
    else:
        raise InputError("give an interval-poset as JSON or --n for all intervals of size n")
    try:
        return [{"input": p.to_json(), "output": func(p).to_json()} for p in inputs]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _hasse(args: argparse.Namespace) -> tuple[list[str], list[tuple[str, str]], dict[str, object]]:
    """Node labels, cover edges and per-node JSON payloads."""
    kind = args.kind
    if kind in ("weak", "tamari", "integer-poset"):
        if args.n is None:
            raise InputError("--n is required")
        n = args.n
    if kind == "weak":
        _cap(n, TREE_CAP, args)
        elems = list(permutations(n))
        return [str(p) for p in elems], [(str(p), str(q)) for p in elems for q in weak_covers(p)], {}
    if kind == "tamari":
        _cap(n, TREE_CAP, args)
        elems = list(enumerate_trees(n))
        return (
            [to_parens(t) for t in elems],
            [(to_parens(t), to_parens(q)) for t in elems for q in tamari_covers(t)],
            {},
        )
    if kind == "integer-poset":
        _cap(n, 3, args)
        elems = ipo.all_posets(n)
        label = {p: json.dumps(p.to_json(), separators=(",", ":")) for p in elems}
        edges = []
        for p in elems:
            ups = [q for q in elems if q != p and ipo.rel_weak_le(p, q)]
            for q in ups:
                if not any(r != q and ipo.rel_weak_le(r, q) for r in ups):
                    edges.append((label[p], label[q]))
        return [label[p] for p in elems], edges, {label[p]: p.to_json() for p in elems}
    if kind == "permutree":
        if args.decoration is None:
            raise InputError("--decoration is required")
        try:
            delta = ptr.check_decoration(args.decoration)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        _cap(len(delta), TREE_CAP, args)
        elems = sorted(ptr.all_permutrees(delta), key=lambda t: ptr.class_minimum(t).word)
        label = {t.edges: str(ptr.class_minimum(t)) for t in elems}
        edges = [(label[t.edges], label[q.edges]) for t in elems for q in ptr.permutree_covers(t)]
        return [label[t.edges] for t in elems], edges, {label[t.edges]: t.to_json() for t in elems}
    if kind == "s-weak":
        if args.s is None:
            raise InputError("--s is required")
        s = parse_s(args.s)
        _cap(len(s), TREE_CAP, args)
        elems = list(sw.enumerate_trees(s))
        return [str(t) for t in elems], [(str(t), str(q)) for t in elems for q in sw.s_covers(t)], {}
    raise InputError(f"unknown lattice {kind!r}")


def cmd_hasse(args: argparse.Namespace):
    nodes, edges, payload = _hasse(args)
    order = {v: i for i, v in enumerate(nodes)}
    edges = sorted(edges, key=lambda e: (order[e[0]], order[e[1]]))
    if args.format == "dot":
        return _dot(args.kind.replace("-", "_"), nodes, edges)
    ups: dict[str, list[str]] = {v: [] for v in nodes}
    for a, b in edges:
        ups[a].append(b)
    if args.format == "csv":
        return [{"source": a, "target": b} for a, b in edges]
    return [{"node": v, "covers": ups[v], **({"data": payload[v]} if v in payload else {})} for v in nodes]


def _partition(args: argparse.Namespace) -> qt.Partition:
    if args.partition is not None:
        try:
            return qt.parse_partition(args.partition)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.n is not None:
        return qt.staircase(args.n)
    raise InputError("give a partition such as 3,2,1 or --n for the staircase")


def _theta(args: argparse.Namespace, lam: qt.Partition) -> Optional[qt.Tableau]:
    if args.tableau is None:
        return None
    try:
        theta = qt.tableau_from_rows(_load_json(args.tableau))
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid tableau: {exc}") from None
    if sorted(theta) != sorted(qt.cells(lam)) or not qt.is_standard(theta):
        raise InputError("tableau must be a standard filling of the partition")
    return theta


def cmd_qt(args: argparse.Namespace) -> list[dict]:
    lam = _partition(args)
    _cap(len(lam), TREE_CAP, args)
    theta = _theta(args, lam)
    if args.action == "intervals":
        if not qt.is_triangular(lam):
            raise InputError(f"{list(lam)} is not a triangular partition")
        poly = qt.interval_qt(lam, theta)
    else:
        try:
            poly = qt.qt_distribution(lam, args.q, args.t, theta)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    row = {"partition": list(lam), "q": args.q, "t": args.t}
    if args.action == "intervals":
        row = {"partition": list(lam), "q": "distance", "t": "theta-sim"}
    if args.action in ("distribution", "intervals"):
        row["polynomial"] = qt.poly_str(poly)
        row["terms"] = qt.poly_to_json(poly)
    elif args.action == "symmetry":
        row["symmetric"] = qt.is_symmetric(poly)
    elif args.action == "schur":
        if not qt.is_symmetric(poly):
            raise InputError("the distribution is not symmetric, so it has no Schur expansion")
        coeffs = qt.schur_expand(poly)
        row["schur"] = {",".join(map(str, k)): v for k, v in sorted(coeffs.items(), reverse=True)}
        row["positive"] = all(v >= 0 for v in coeffs.values())
    return [row]


def cmd_verify(args: argparse.Namespace) -> tuple[list[dict], bool]:
    names = list(SUITES) if args.name == "all" else [args.name]
    rows = []
    ok = True
    for name in names:
        checks = run_suite(name, Options(n=args.n, jobs=args.jobs))
        passed = all(c.ok for c in checks)
        ok &= passed
        rows += [{"suite": name, **c.to_json()} for c in checks]
        rows.append({"suite": name, "check": "summary", "ok": passed, "detail": f"{sum(c.ok for c in checks)}/{len(checks)}"})
    return rows, ok


# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--force", action="store_true", help="allow sizes beyond the desk-scale caps")

    parser = argparse.ArgumentParser(prog="latticeforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count lattice elements or intervals")
    p.add_argument("what", choices=("tamari-intervals", "m-intervals", "permutrees", "s-trees", "triangular"))
    p.add_argument("values", nargs="*")
    p.add_argument("--n")
    p.add_argument("--m")
    p.add_argument("--s")
    p.add_argument("--decoration")
    p.add_argument("--enumerate", action="store_true", help="count by exhaustive enumeration")

    p = sub.add_parser("map", parents=[common], help="apply a bijection")
    p.add_argument(
        "kind",
        choices=(
            "interval-to-trees",
            "trees-to-interval",
            "interval-to-grafting",
            "grafting-to-interval",
            "zeta-inverse",
            "zeta",
            "expand",
            "contract",
        ),
    )
    p.add_argument("values", nargs="*", help="JSON object, '-' for stdin, tree encodings or an area sequence")
    p.add_argument("--m", type=int)

    p = sub.add_parser("invol", parents=[common], help="apply an involution to interval-posets")
    p.add_argument("which", choices=("psi", "phi", "beta", "beta-m"))
    p.add_argument("interval", nargs="?", help="interval-poset JSON or '-' for stdin")
    p.add_argument("--n", type=int, help="apply to every interval of size n")
    p.add_argument("--m", type=int)

    p = sub.add_parser("hasse", parents=[common], help="export a Hasse diagram")
    p.add_argument("kind", choices=("weak", "tamari", "permutree", "s-weak", "integer-poset"))
    p.add_argument("--n", type=int)
    p.add_argument("--s")
    p.add_argument("--decoration")

    p = sub.add_parser("qt", parents=[common], help="q,t statistics on sub-partitions")
    p.add_argument("action", choices=("distribution", "symmetry", "schur", "intervals"))
    p.add_argument("partition", nargs="?", help="such as 3,2,1")
    p.add_argument("--n", type=int, help="use the staircase of size n")
    p.add_argument("--q", default="area", help="area, sim, deficit or theta-sim")
    p.add_argument("--t", default="sim", help="area, sim, deficit or theta-sim")
    p.add_argument("--tableau", help="rows as JSON, such as [[1,2],[3]]")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("name", choices=(*SUITES, "all"))
    p.add_argument("--n", type=int, help="override the suite's size bound")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


COMMANDS = {"count": cmd_count, "map": cmd_map, "invol": cmd_invol, "hasse": cmd_hasse, "qt": cmd_qt}


def _absorb(parser: argparse.ArgumentParser, args: argparse.Namespace, extra: list[str]) -> None:
    """Attach positionals that followed an option, such as ``map expand --m 2 JSON``."""
    for tok in extra:
        if tok.startswith("-") and tok != "-":
            parser.error(f"unrecognized arguments: {tok}")
        if isinstance(getattr(args, "values", None), list):
            args.values.append(tok)
        elif getattr(args, "interval", False) is None:
            args.interval = tok
        elif getattr(args, "partition", False) is None:
            args.partition = tok
        else:
            parser.error(f"unrecognized arguments: {tok}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        _absorb(parser, args, extra)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT_INPUT
    status = 0
    try:
        if args.format == "dot" and args.command != "hasse":
            raise InputError("--format dot applies to hasse only")
        if args.command == "verify":
            if args.jobs < 1:
                raise InputError("--jobs must be positive")
            rows, ok = cmd_verify(args)
            status = 0 if ok else EXIT_VERIFY
        else:
            rows = COMMANDS[args.command](args)
        text = rows if isinstance(rows, str) else render(rows, args.format)
    except InputError as exc:
        print(f"latticeforge: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
