"""Pure-Python kernels: the per-vertex scan of the tree-counting engine and
the two subquadratic single-pattern algorithms.

This module mirrors the compiled extension exactly (same results, same touch
accounting) and is the fallback the package selects when the extension is not
built.  Counters are plain Python ints, so results are exact at any size.
"""

from __future__ import annotations

from math import isqrt

from .sumtree import SumTree, SumTree2D

BACKEND_NAME = "python"


def count_tree(labels, parents, pi):
    """Count occurrences of the flattened corner tree in pi.

    Per vertex (children first; parents precede descendants in the arrays, so
    back-to-front order works): multiply the children's arrays termwise, then
    scan pi in the direction given by the vertex label, reading the partial
    sum at each step from a sum tree keyed by value before inserting the
    current position's entry.  Returns (count, touches).
    """
    n = len(pi)
    k = len(labels)
    if n == 0:
        return 0, 0
    touches = 0
    bufs = {}
    result = 0
    for v in range(k - 1, -1, -1):
        merged = None
        for u in range(v + 1, k):
            if parents[u] == v:
                child = bufs.pop(u)
                if merged is None:
                    merged = child
                else:
                    merged = [a * b for a, b in zip(merged, child)]
        if merged is None:
            merged = [1] * n
        if parents[v] < 0:
            result = sum(merged)
            break
        label = labels[v]
        out = [0] * n
        tree = SumTree(n)
        ascending = label in (1, 3)  # *W vertices sit left of their parent
        prefix = label in (1, 2)  # S* vertices sit below their parent
        positions = range(n) if ascending else range(n - 1, -1, -1)
        for x in positions:
            y = pi[x]
            out[x] = tree.prefix_excl(y) if prefix else tree.suffix_excl(y)
            tree.add(y, merged[x])
        touches += tree.touches
        bufs[v] = out
    return result, touches


def count_3241(pi, m=None):
    """Count the pattern 3241 in O((n^2/m + nm) log^2 n) time.

    Phase one scans pi once per value strip of height m, accumulating the
    occurrences whose 1 sits in the strip with the 2 above it, plus those
    whose 4 sits in the strip with the 3 below it, minus the double-counted
    overlap.  Phase two counts the leftovers (21 and 34 each inside a single
    strip) with a 2D product tree over same-strip pairs.
    Returns (count, touches).
    """
    n = len(pi)
    if n < 4:
        return 0, 0
    if m is None:
        m = max(1, isqrt(n))
    total = 0
    touches = 0
    for lo in range(0, n, m):
        hi = min(lo + m, n)
        running = 0
        a1 = SumTree(n)
        a12 = SumTree(n)
        b1 = SumTree(n)
        b21 = SumTree(n)
        for x in range(n):
            y = pi[x]
            if y <= lo:
                b1.add(y, 1)
                greater = b1.suffix_excl(y)
                b21.add(y, greater)
                running += greater * (y - 1 - b1.prefix_excl(y)) - b21.suffix_excl(y)
            elif y > hi:
                a1.add(y, 1)
                smaller = a1.prefix_excl(y)
                a12.add(y, smaller)
                running += smaller * (smaller - 1) // 2 - a12.prefix_excl(y)
                floor = (y - 1) // m * m
                below = a1.prefix_incl(floor)
                running -= below * (below - 1) // 2 - a12.prefix_incl(floor)
            else:
                total += running
        touches += a1.touches + a12.touches + b1.touches + b21.touches
    inv = [0] * (n + 1)
    for x in range(n):
        inv[pi[x]] = x + 1
    grid = SumTree2D(n)
    for y in range(1, n + 1):
        floor = (y - 1) // m * m
        py = inv[y]
        for z in range(floor + 1, y):
            # only descent pairs can land in a later query box (it forces the
            # 2's position before the 1's), so ascending pairs are skipped
            if py < inv[z]:
                grid.add(inv[z], py, 1)
        for z in range(y + 1, min(floor + m, n) + 1):
            pz = inv[z]
            if py < pz:
                total += grid.box_sum(
                    pz, n, py, pz, x_lo_open=True, y_lo_open=True, y_hi_open=True
                )
    touches += grid.touches
    return total, touches


def count_3214(pi, m=None):
    """Count the pattern 3214 in O((n^2/m + nm^2) log^2 n) time.

    Splits occurrences by whether the 3 and the 4 share a value strip and
    whether the 1 and the 4 share a position strip: cross-strip cases reduce
    to 321 counting per strip (on pi and on its inverse, with a snapshot
    subtraction for the overlap); the residual iterates O(nm^2) candidate
    (3, 1, 4) triples and box-counts the 2 on a 2D tree of the plot.
    Returns (count, touches).
    """
    n = len(pi)
    if n < 4:
        return 0, 0
    if m is None:
        m = 1
        while (m + 1) ** 3 <= n:
            m += 1
    inv = [0] * (n + 1)
    for x in range(n):
        inv[pi[x]] = x + 1

    total = 0
    touches = 0

    def strip_pass(seq, subtract_shared):
        """Occurrences with the 4's value strip strictly above the 3's; with
        subtract_shared, those whose 1 and 4 share a position strip are left
        out (their completion was snapshotted at the last multiple of m)."""
        count = 0
        cost = 0
        for lo in range(m, n, m):
            hi = min(lo + m, n)
            ones = SumTree(n)
            pairs = SumTree(n)
            running = 0
            saved = 0
            for x in range(n):
                y = seq[x]
                if y <= lo:
                    running += pairs.suffix_excl(y)
                    pairs.add(y, ones.suffix_excl(y))
                    ones.add(y, 1)
                elif y <= hi:
                    count += running - (saved if subtract_shared else 0)
                if (x + 1) % m == 0:
                    saved = running
            cost += ones.touches + pairs.touches
        return count, cost

    part, cost = strip_pass(pi, True)
    total += part
    touches += cost
    part, cost = strip_pass(tuple(inv[1:]), False)
    total += part
    touches += cost

    grid = SumTree2D(n)
    for x in range(n):
        grid.add(x + 1, pi[x], 1)
    for i4 in range(1, n + 1):
        v4 = pi[i4 - 1]
        vfloor = (v4 - 1) // m * m
        pfloor = (i4 - 1) // m * m
        for i3 in range(pfloor + 1, i4):
            v3 = pi[i3 - 1]
            for v1 in range(max(vfloor, v3) + 1, v4):
                i1 = inv[v1]
                if i1 + 1 < i3 and v3 + 1 < v1:
                    total += grid.box_sum(
                        i1, i3, v3, v1,
                        x_lo_open=True, x_hi_open=True,
                        y_lo_open=True, y_hi_open=True,
                    )
    touches += grid.touches
    return total, touches
