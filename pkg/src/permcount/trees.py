"""Corner trees and the near-linear occurrence counting engine.

A corner tree is a rooted tree whose non-root vertices carry one of the four
corner labels SW, SE, NW, NE; children are unordered.  An occurrence of a tree
T in a permutation pi is any map from vertices to positions (not necessarily
injective) such that each *W vertex sits at a position left of its parent's,
each *E vertex right of it, and S*/N* vertices sit at smaller/larger values.
``count_corner_tree`` counts all such maps in O(|T| n log n) time by scanning
pi once per vertex with a sum tree.

Trees are written ``R(NE(SW),SE)``: R is the root, parentheses hold children,
and children print in a fixed canonical order so equal trees print equally.
"""

from __future__ import annotations

from array import array
from functools import lru_cache
from typing import Sequence

from . import backend
from .errors import BoundExceededError, TreeParseError
from .perms import CORNER_LABELS, D4Element

ROOT_LABEL = "R"

# label codes shared with the kernels: S* query a prefix, N* a suffix,
# *W scan left to right, *E right to left
LABEL_CODES = {"R": 0, "SW": 1, "SE": 2, "NW": 3, "NE": 4}

DEFAULT_SIZE_BOUND = 7


class CornerTree:
    """An immutable corner tree; children are kept in canonical sorted order.

    >>> t = CornerTree("R", (CornerTree("NE"), CornerTree("SW")))
    >>> str(t)
    'R(NE,SW)'
    >>> t.size
    3
    """

    __slots__ = ("label", "children", "size", "_notation")

    def __init__(self, label: str, children: Sequence["CornerTree"] = ()):
        if label != ROOT_LABEL and label not in CORNER_LABELS:
            raise TreeParseError("unknown vertex label %r" % label)
        children = tuple(sorted(children, key=lambda c: c._notation))
        for child in children:
            if child.label == ROOT_LABEL:
                raise TreeParseError("the root label may only appear at the top")
        self.label = label
        self.children = children
        self.size = 1 + sum(c.size for c in children)
        if children:
            self._notation = label + "(" + ",".join(c._notation for c in children) + ")"
        else:
            self._notation = label

    def __str__(self):
        return self._notation

    def __repr__(self):
        return "CornerTree.parse(%r)" % self._notation

    def __eq__(self, other):
        return isinstance(other, CornerTree) and self._notation == other._notation

    def __lt__(self, other):
        return self._notation < other._notation

    def __hash__(self):
        return hash(self._notation)

    @staticmethod
    def parse(text: str) -> "CornerTree":
        return parse_tree(text)


def tree(label: str, *children: CornerTree) -> CornerTree:
    """Shorthand constructor: tree("R", tree("NE", tree("SW")))."""
    return CornerTree(label, children)


def parse_tree(text: str) -> CornerTree:
    """Parse the ``R(NE(SW),SE)`` notation.

    >>> str(parse_tree(" R( SE, NE(SW) ) "))
    'R(NE(SW),SE)'
    """
    stripped = "".join(text.split())
    if not stripped:
        raise TreeParseError("empty tree notation")
    pos = 0

    def parse_node(expect_root: bool) -> CornerTree:
        nonlocal pos
        start = pos
        while pos < len(stripped) and stripped[pos].isalpha():
            pos += 1
        label = stripped[start:pos]
        if expect_root:
            if label != ROOT_LABEL:
                raise TreeParseError("tree must start with the root label R, got %r" % label)
        elif label not in CORNER_LABELS:
            raise TreeParseError("unknown corner label %r" % label)
        children = []
        if pos < len(stripped) and stripped[pos] == "(":
            pos += 1
            while True:
                children.append(parse_node(False))
                if pos >= len(stripped):
                    raise TreeParseError("unbalanced parentheses in %r" % text)
                if stripped[pos] == ",":
                    pos += 1
                    continue
                if stripped[pos] == ")":
                    pos += 1
                    break
                raise TreeParseError("unexpected character %r in %r" % (stripped[pos], text))
        return CornerTree(label, children)

    result = parse_node(True)
    if pos != len(stripped):
        raise TreeParseError("trailing input %r in %r" % (stripped[pos:], text))
    return result


def format_tree(t: CornerTree) -> str:
    """The canonical notation string (children in sorted order)."""
    return str(t)


def canonical_encode(t: CornerTree) -> bytes:
    """Canonical byte-string encoding; equal trees encode equally regardless
    of the child order they were built with."""
    return str(t).encode("ascii")


def d4_tree(g: D4Element, t: CornerTree) -> CornerTree:
    """Relabel a tree by a plot symmetry: rev swaps W and E, inv swaps NW and
    SE, so counts obey count(d4_tree(g, T), apply_d4(g, pi)) == count(T, pi).
    """
    label = t.label if t.label == ROOT_LABEL else g.label_map[t.label]
    return CornerTree(label, tuple(d4_tree(g, c) for c in t.children))


# --- enumeration ---


@lru_cache(maxsize=None)
def _subtrees(size: int) -> tuple:
    """All canonical corner-labeled subtrees with exactly ``size`` vertices."""
    result = []
    for label in CORNER_LABELS:
        for children in _child_multisets(size - 1):
            result.append(CornerTree(label, children))
    return tuple(result)


@lru_cache(maxsize=None)
def _child_multisets(total: int) -> tuple:
    """All multisets of subtrees with sizes summing to ``total``, each
    generated once (children drawn in non-decreasing pool order)."""
    if total == 0:
        return ((),)
    pool = []
    for size in range(1, total + 1):
        pool.extend(_subtrees(size))

    results = []

    def extend(prefix: list, remaining: int, start: int) -> None:
        if remaining == 0:
            results.append(tuple(prefix))
            return
        for idx in range(start, len(pool)):
            sub = pool[idx]
            if sub.size <= remaining:
                prefix.append(sub)
                extend(prefix, remaining - sub.size, idx)
                prefix.pop()

    extend([], total, 0)
    return tuple(results)


def enumerate_corner_trees(k: int, *, size_bound: int = DEFAULT_SIZE_BOUND) -> list:
    """All canonical corner trees with exactly k vertices.

    There are 1, 4, 26, 188 of them for k = 1..4; the count grows roughly
    like 11.07^k, hence the guarded bound.

    >>> len(enumerate_corner_trees(2))
    4
    """
    if k < 1:
        raise TreeParseError("tree size must be >= 1, got %d" % k)
    if k > size_bound:
        raise BoundExceededError(
            "enumerating %d-vertex trees exceeds the bound %d; pass size_bound "
            "explicitly to proceed" % (k, size_bound)
        )
    return [CornerTree(ROOT_LABEL, children) for children in _child_multisets(k - 1)]


# --- counting ---


def _flatten(t: CornerTree):
    """Vertex arrays for the kernels: labels and parent slots, in an order
    where every parent precedes its descendants (so the kernels can process
    vertices back to front, children first)."""
    labels = []
    parents = []

    def walk(node: CornerTree, parent: int) -> int:
        idx = len(labels)
        labels.append(LABEL_CODES[node.label])
        parents.append(parent)
        for child in node.children:
            walk(child, idx)
        return idx

    walk(t, -1)
    return array("q", labels), array("q", parents)


def count_corner_tree(t: CornerTree, pi: Sequence[int], *, cost=None) -> int:
    """Count occurrences (vertex-to-position maps) of t in pi.

    >>> count_corner_tree(parse_tree("R(NE)"), (2, 4, 1, 3))
    3
    """
    if t.label != ROOT_LABEL:
        raise TreeParseError("counting requires a rooted tree (label R at the top)")
    labels, parents = _flatten(t)
    count, touches = backend.count_tree(labels, parents, pi)
    if cost is not None:
        cost.add(touches)
    return count


class TouchCounter:
    """Accumulates instrumented data-structure touch counts across calls."""

    __slots__ = ("total",)

    def __init__(self):
        self.total = 0

    def add(self, amount: int) -> None:
        self.total += amount

    def __repr__(self):
        return "TouchCounter(total=%d)" % self.total
