"""Binary trees, Dyck paths and the Tamari lattice, with its nu-generalization.

Dyck paths are strings over ``1`` (up) and ``0`` (down). Trees use the
in-order labeling of :mod:`latticeforge.binarytree`. Rotations go up in the
Tamari order: the minimum is the left chain, the maximum the right chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .binarytree import (
    BinaryTree,
    Tree,
    enumerate_trees,
    left_chain,
    parent_map,
    right_chain,
    tree_size,
)
from .weakorder import class_minimum, sylvester_insert, weak_join, weak_meet

__all__ = [
    "BinaryTree",
    "NuPath",
    "dyck_rotate",
    "dyck_to_tree",
    "dyck_valleys",
    "enumerate_dyck",
    "enumerate_nu_paths",
    "enumerate_trees",
    "is_dyck",
    "loday_coordinates",
    "nu_rotate",
    "nu_tamari_covers",
    "staircase_nu",
    "dyck_to_nu",
    "tamari_covers",
    "tamari_join",
    "tamari_le",
    "tamari_meet",
    "tamari_max",
    "tamari_min",
    "tree_rotate",
    "tree_to_dyck",
]


def tamari_min(n: int) -> Tree:
    return left_chain(n)


def tamari_max(n: int) -> Tree:
    return right_chain(n)


def tree_rotate(t: Tree, node: int) -> Tree:
    """Rotate at ``node``, which must be the left child of its parent.

    ``y(x(A, B), C)`` becomes ``x(A, y(B, C))``; this is an upper Tamari cover.
    """
    parents = parent_map(t)
    if node not in parents or parents[node][1] != "L":
        raise ValueError(f"no rotation at node {node}: it is not a left child")
    target = parents[node][0]

    def walk(u: Tree, offset: int) -> Tree:
        if u is None:
            return None
        label = offset + tree_size(u.left) + 1
        if label == target:
            x = u.left
            return BinaryTree(x.left, BinaryTree(x.right, u.right))
        if target < label:
            return BinaryTree(walk(u.left, offset), u.right)
        return BinaryTree(u.left, walk(u.right, label))

    return walk(t, 0)


def tamari_covers(t: Tree) -> list[Tree]:
    """All upper covers of ``t``, ordered by rotated node label."""
    return [tree_rotate(t, x) for x, (_, side) in sorted(parent_map(t).items()) if side == "L"]


def _check_sizes(t: Tree, q: Tree) -> None:
    if tree_size(t) != tree_size(q):
        raise ValueError(f"size mismatch: {tree_size(t)} vs {tree_size(q)}")


def tamari_le(t: Tree, q: Tree) -> bool:
    """``t <= q`` iff the forests dec(t) and inc(q) form an interval-poset."""
    from .intervalposets import from_tree_pair

    _check_sizes(t, q)
    try:
        from_tree_pair(t, q)
    except ValueError:
        return False
    return True


def tamari_meet(t: Tree, q: Tree) -> Tree:
    _check_sizes(t, q)
    return sylvester_insert(weak_meet(class_minimum(t), class_minimum(q)))


def tamari_join(t: Tree, q: Tree) -> Tree:
    _check_sizes(t, q)
    return sylvester_insert(weak_join(class_minimum(t), class_minimum(q)))


def is_dyck(d: str) -> bool:
    h = 0
    for ch in d:
        if ch == "1":
            h += 1
        elif ch == "0":
            h -= 1
            if h < 0:
                return False
        else:
            return False
    return h == 0


def _check_dyck(d: str) -> None:
    if not is_dyck(d):
        raise ValueError(f"malformed Dyck path {d!r}")


def tree_to_dyck(t: Tree) -> str:
    """``D(T) = D(L) 1 D(R) 0``; the left chain maps to ``1010...``."""
    if t is None:
        return ""
    return tree_to_dyck(t.left) + "1" + tree_to_dyck(t.right) + "0"


def dyck_to_tree(d: str) -> Tree:
    _check_dyck(d)

    def build(w: str) -> Tree:
        if not w:
            return None
        h = 0
        k = len(w) - 1
        while True:
            h += 1 if w[k] == "0" else -1
            if h == 0:
                break
            k -= 1
        return BinaryTree(build(w[:k]), build(w[k + 1 : -1]))

    return build(d)


def _primitive_end(d: str, start: int) -> int:
    """End index (exclusive) of the excursion starting with the up step at ``start``."""
    h = 0
    for j in range(start, len(d)):
        h += 1 if d[j] == "1" else -1
        if h == 0:
            return j + 1
    raise ValueError("unbalanced path")


def dyck_valleys(d: str) -> list[int]:
    return [i for i in range(len(d) - 1) if d[i] == "0" and d[i + 1] == "1"]


def dyck_rotate(d: str, down_index: int) -> str:
    """Swap the down step at ``down_index`` with the primitive path after it."""
    _check_dyck(d)
    if not (0 <= down_index < len(d) - 1 and d[down_index] == "0" and d[down_index + 1] == "1"):
        raise ValueError(f"index {down_index} is not a valley of {d!r}")
    end = _primitive_end(d, down_index + 1)
    return d[:down_index] + d[down_index + 1 : end] + "0" + d[end:]


@lru_cache(maxsize=None)
def _all_dyck(n: int) -> tuple[str, ...]:
    if n == 0:
        return ("",)
    out = []
    for k in range(n):
        for a in _all_dyck(k):
            for b in _all_dyck(n - 1 - k):
                out.append("1" + a + "0" + b)
    return tuple(out)


def enumerate_dyck(n: int) -> Iterator[str]:
    if n < 0:
        raise ValueError(f"size must be nonnegative, got {n}")
    return iter(_all_dyck(n))


def loday_coordinates(t: Tree) -> tuple[int, ...]:
    """``v_i`` = leaves of the left subtree times leaves of the right subtree of node ``i``."""
    out: list[int] = []

    def walk(u: Tree) -> None:
        if u is None:
            return
        walk(u.left)
        out.append((tree_size(u.left) + 1) * (tree_size(u.right) + 1))
        walk(u.right)

    walk(t)
    return tuple(out)


@dataclass(frozen=True)
class NuPath:
    """A lattice path ``path`` weakly above ``nu``; both are words over ``N`` and ``E``."""

    nu: str
    path: str

    def __post_init__(self) -> None:
        for w in (self.nu, self.path):
            if any(ch not in "NE" for ch in w):
                raise ValueError(f"lattice words use N and E only, got {w!r}")
        if sorted(self.nu) != sorted(self.path):
            raise ValueError("path and nu must have the same steps")
        hp = hn = 0
        for a, b in zip(self.path, self.nu):
            hp += a == "N"
            hn += b == "N"
            if hp < hn:
                raise ValueError(f"path {self.path!r} goes below {self.nu!r}")

    def __str__(self) -> str:
        return self.path


def _levels(nu: str) -> list[int]:
    """``levels[y]`` is the largest abscissa of ``nu`` at height ``y``."""
    out = []
    x = 0
    for ch in nu:
        if ch == "E":
            x += 1
        else:
            out.append(x)
    out.append(x)
    return out


def nu_rotate(p: NuPath, step: int) -> NuPath:
    """Swap the E step at ``step`` with the subpath up to the next point at equal distance to nu."""
    e = p.path
    if not (0 <= step < len(e) - 1 and e[step] == "E" and e[step + 1] == "N"):
        raise ValueError(f"index {step} is not a valley of {e!r}")
    lvl = _levels(p.nu)
    x = e[: step + 1].count("E")
    y = e[: step + 1].count("N")
    dist = lvl[y] - x
    j = step + 1
    while j < len(e):
        if e[j] == "E":
            x += 1
        else:
            y += 1
        if lvl[y] - x == dist:
            break
        j += 1
    new = e[:step] + e[step + 1 : j + 1] + "E" + e[j + 1 :]
    return NuPath(p.nu, new)


def nu_tamari_covers(p: NuPath) -> list[NuPath]:
    return [nu_rotate(p, i) for i in range(len(p.path) - 1) if p.path[i] == "E" and p.path[i + 1] == "N"]


def enumerate_nu_paths(nu: str) -> Iterator[NuPath]:
    """All paths weakly above ``nu`` in lexicographic order of their words."""
    total_n = nu.count("N")
    total_e = nu.count("E")
    floor = []
    h = 0
    for ch in nu:
        h += ch == "N"
        floor.append(h)

    def rec(prefix: list[str], hn: int, he: int) -> Iterator[str]:
        i = len(prefix)
        if i == len(nu):
            yield "".join(prefix)
            return
        for ch in "EN":
            nn, ne = hn + (ch == "N"), he + (ch == "E")
            if nn > total_n or ne > total_e or nn < floor[i]:
                continue
            prefix.append(ch)
            yield from rec(prefix, nn, ne)
            prefix.pop()

    for w in rec([], 0, 0):
        yield NuPath(nu, w)


def staircase_nu(n: int, m: int = 1) -> str:
    """The path ``(N E^m)^n`` whose nu-Tamari lattice is the m-Tamari lattice."""
    return ("N" + "E" * m) * n


def dyck_to_nu(d: str) -> NuPath:
    _check_dyck(d)
    n = len(d) // 2
    return NuPath(staircase_nu(n), d.replace("1", "N").replace("0", "E"))
