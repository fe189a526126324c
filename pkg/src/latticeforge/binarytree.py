"""Immutable binary trees with in-order labels.

A tree is either ``None`` (the empty tree) or a :class:`BinaryTree` node.
Nodes are labeled implicitly by their in-order rank, so a tree of size ``n``
is the standard binary search tree on ``1..n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional


@dataclass(frozen=True)
class BinaryTree:
    left: Optional["BinaryTree"] = None
    right: Optional["BinaryTree"] = None
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", 1 + tree_size(self.left) + tree_size(self.right))

    def __str__(self) -> str:
        return to_parens(self)


Tree = Optional[BinaryTree]


def tree_size(t: Tree) -> int:
    return 0 if t is None else t.size


def to_parens(t: Tree) -> str:
    """Encode ``t`` as balanced parentheses: node = ``(L)R``."""
    out: list[str] = []

    def walk(u: Tree) -> None:
        while u is not None:
            out.append("(")
            walk(u.left)
            out.append(")")
            u = u.right

    walk(t)
    return "".join(out)


def from_parens(s: str) -> Tree:
    """Inverse of :func:`to_parens`."""
    s = s.strip()
    if any(ch not in "()" for ch in s):
        raise ValueError(f"invalid tree encoding {s!r}")
    match = [0] * len(s)
    stack: list[int] = []
    for i, ch in enumerate(s):
        if ch == "(":
            stack.append(i)
        else:
            if not stack:
                raise ValueError(f"unbalanced tree encoding {s!r}")
            match[stack.pop()] = i
    if stack:
        raise ValueError(f"unbalanced tree encoding {s!r}")

    def build(lo: int, hi: int) -> Tree:
        if lo >= hi:
            return None
        close = match[lo]
        return BinaryTree(build(lo + 1, close), build(close + 1, hi))

    return build(0, len(s))


def node_subtrees(t: Tree) -> dict[int, BinaryTree]:
    """Map each in-order label to the subtree rooted at that node."""
    out: dict[int, BinaryTree] = {}

    def walk(u: Tree, offset: int) -> None:
        if u is None:
            return
        label = offset + tree_size(u.left) + 1
        out[label] = u
        walk(u.left, offset)
        walk(u.right, label)

    walk(t, 0)
    return out


def parent_map(t: Tree) -> dict[int, tuple[int, str]]:
    """Map each non-root label to ``(parent label, 'L' or 'R')``."""
    out: dict[int, tuple[int, str]] = {}

    def walk(u: Tree, offset: int) -> int:
        label = offset + tree_size(u.left) + 1
        if u.left is not None:
            out[walk(u.left, offset)] = (label, "L")
        if u.right is not None:
            out[walk(u.right, label)] = (label, "R")
        return label

    if t is not None:
        walk(t, 0)
    return out


def root_label(t: BinaryTree) -> int:
    return tree_size(t.left) + 1


def left_chain(n: int) -> Tree:
    t: Tree = None
    for _ in range(n):
        t = BinaryTree(t, None)
    return t


def right_chain(n: int) -> Tree:
    t: Tree = None
    for _ in range(n):
        t = BinaryTree(None, t)
    return t


def mirror(t: Tree) -> Tree:
    if t is None:
        return None
    return BinaryTree(mirror(t.right), mirror(t.left))


@lru_cache(maxsize=None)
def _all_trees(n: int) -> tuple[Tree, ...]:
    if n == 0:
        return (None,)
    out: list[Tree] = []
    for k in range(n):
        for left in _all_trees(k):
            for right in _all_trees(n - 1 - k):
                out.append(BinaryTree(left, right))
    return tuple(out)


def enumerate_trees(n: int) -> Iterator[Tree]:
    """All binary trees of size ``n``, ordered by left-subtree size then recursively."""
    if n < 0:
        raise ValueError(f"size must be nonnegative, got {n}")
    return iter(_all_trees(n))
