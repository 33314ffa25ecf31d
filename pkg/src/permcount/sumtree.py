"""Sum trees: complete binary trees of counters supporting prefix, suffix and
box sums in logarithmic time.

These are the pure-Python reference structures.  The compiled kernels embed
their own C equivalents; both sides use the same touch-accounting rules so
instrumented costs are comparable across backends:

    add            -> depth + 1 node touches (one write per level)
    prefix/suffix  -> depth touches (one per level climbed)
    point read     -> 1 touch
    2D insert      -> (depth + 1)^2 touches (ancestor pair writes)
    2D box query   -> |cover_x| * |cover_y| touches (cell reads)

where depth = ceil(log2 n) and the capacity is rounded up to a power of two.
"""

from __future__ import annotations

from .errors import IndexOutOfRangeError, InvalidRangeError


class SumTree:
    """Counters indexed 1..n with prefix and suffix sums.

    Leaves sit in a flat array at ``cap + (y - 1)``; every internal node holds
    the sum of its two children, and node 1 holds the grand total.

    >>> t = SumTree(8)
    >>> for y in (2, 8, 1, 7):
    ...     t.add(y, 1)
    >>> t.prefix_excl(7)
    2
    >>> t.total
    4
    """

    __slots__ = ("n", "cap", "depth", "node", "touches")

    def __init__(self, n: int):
        if n < 0:
            raise IndexOutOfRangeError("size must be >= 0, got %d" % n)
        cap = 1
        depth = 0
        while cap < n:
            cap <<= 1
            depth += 1
        self.n = n
        self.cap = cap
        self.depth = depth
        self.node = [0] * (2 * cap)
        self.touches = 0

    def _leaf(self, y: int) -> int:
        if not 1 <= y <= self.n:
            raise IndexOutOfRangeError("index %d out of range 1..%d" % (y, self.n))
        return self.cap + y - 1

    def add(self, y: int, delta) -> None:
        """Add delta to the counter at y, updating all ancestors."""
        i = self._leaf(y)
        node = self.node
        while i >= 1:
            node[i] += delta
            i >>= 1
        self.touches += self.depth + 1

    def set_value(self, y: int, value) -> None:
        """Overwrite the counter at y."""
        self.add(y, value - self.node[self._leaf(y)])
        self.touches += 1

    def value_at(self, y: int):
        self.touches += 1
        return self.node[self._leaf(y)]

    def prefix_excl(self, y: int):
        """Sum of counters at indices strictly below y."""
        i = self._leaf(y)
        node = self.node
        total = 0
        while i > 1:
            if i & 1:
                total += node[i - 1]
            i >>= 1
        self.touches += self.depth
        return total

    def suffix_excl(self, y: int):
        """Sum of counters at indices strictly above y."""
        i = self._leaf(y)
        node = self.node
        total = 0
        while i > 1:
            if not i & 1:
                total += node[i + 1]
            i >>= 1
        self.touches += self.depth
        return total

    def prefix_incl(self, y: int):
        """Sum of counters at indices <= y; y = 0 is allowed and gives 0."""
        if y == 0:
            return 0
        return self.prefix_excl(y) + self.value_at(y)

    def suffix_incl(self, y: int):
        """Sum of counters at indices >= y; y = n + 1 is allowed and gives 0."""
        if y == self.n + 1:
            return 0
        return self.suffix_excl(y) + self.value_at(y)

    @property
    def total(self):
        return self.node[1]


def _canonical_cover(cap: int, lo: int, hi: int) -> list:
    """Node indices covering leaves lo..hi (1-based, inclusive) exactly once."""
    nodes = []
    left = cap + lo - 1
    right = cap + hi  # half-open
    while left < right:
        if left & 1:
            nodes.append(left)
            left += 1
        if right & 1:
            right -= 1
            nodes.append(right)
        left >>= 1
        right >>= 1
    return nodes


class SumTree2D:
    """Sparse product of two complete binary trees over the grid 1..n x 1..n.

    Only nonzero node-pair aggregates are stored, in a dict keyed by the pair
    of node indices; after s insertions at most s * (depth + 1)^2 entries
    exist.  Insertion updates all ancestor pairs; a box query sums the
    canonical cover pairs, so arbitrary half-open boxes cost O(log^2 n).

    >>> t = SumTree2D(4)
    >>> t.add(2, 3, 1)
    >>> t.add(4, 1, 1)
    >>> t.box_sum(1, 4, 1, 4)
    2
    >>> t.box_sum(2, 4, 1, 3, x_lo_open=True)
    1
    """

    __slots__ = ("n", "cap", "depth", "cells", "touches")

    def __init__(self, n: int):
        if n < 0:
            raise IndexOutOfRangeError("size must be >= 0, got %d" % n)
        cap = 1
        depth = 0
        while cap < n:
            cap <<= 1
            depth += 1
        self.n = n
        self.cap = cap
        self.depth = depth
        self.cells: dict = {}
        self.touches = 0

    def _check(self, z: int, axis: str) -> None:
        if not 1 <= z <= self.n:
            raise IndexOutOfRangeError("%s index %d out of range 1..%d" % (axis, z, self.n))

    def add(self, x: int, y: int, delta) -> None:
        self._check(x, "x")
        self._check(y, "y")
        cells = self.cells
        i = self.cap + x - 1
        while i >= 1:
            j = self.cap + y - 1
            while j >= 1:
                key = (i, j)
                cells[key] = cells.get(key, 0) + delta
                j >>= 1
            i >>= 1
        self.touches += (self.depth + 1) ** 2

    @property
    def entry_count(self) -> int:
        return len(self.cells)

    def box_sum(
        self,
        x_lo: int,
        x_hi: int,
        y_lo: int,
        y_hi: int,
        *,
        x_lo_open: bool = False,
        x_hi_open: bool = False,
        y_lo_open: bool = False,
        y_hi_open: bool = False,
    ):
        """Sum over the box; each side may independently be open or closed."""
        if x_lo > x_hi or y_lo > y_hi:
            raise InvalidRangeError(
                "reversed range: [%d, %d] x [%d, %d]" % (x_lo, x_hi, y_lo, y_hi)
            )
        self._check(x_lo, "x")
        self._check(x_hi, "x")
        self._check(y_lo, "y")
        self._check(y_hi, "y")
        x_lo += x_lo_open
        x_hi -= x_hi_open
        y_lo += y_lo_open
        y_hi -= y_hi_open
        if x_lo > x_hi or y_lo > y_hi:
            return 0
        cover_x = _canonical_cover(self.cap, x_lo, x_hi)
        cover_y = _canonical_cover(self.cap, y_lo, y_hi)
        cells = self.cells
        total = 0
        for i in cover_x:
            for j in cover_y:
                total += cells.get((i, j), 0)
        self.touches += len(cover_x) * len(cover_y)
        return total
