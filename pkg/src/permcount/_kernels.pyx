# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: C twins of kernels_py with identical results and touch
accounting.  Tree-count accumulators are 128-bit (the dispatcher guarantees
|T| * ceil(log2(n+1)) <= 126 bits); the 2D product tree is a flat
open-addressing hash table so the subquadratic 3241/3214 runs stay within
memory at large n.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport exp
from libc.string cimport memset

BACKEND_NAME = "compiled"

ctypedef long long i64
ctypedef unsigned long long u64

cdef extern from *:
    ctypedef long long i128 "__int128"


cdef object _py_from_i128(i128 v):
    # counts are nonnegative, so a plain hi/lo split reassembles exactly
    cdef u64 lo = <u64> v
    cdef i64 hi = <i64> (v >> 64)
    return (int(hi) << 64) | int(lo)


# --- 1D sum trees (128-bit payload for tree counting, 64-bit elsewhere) ---

cdef struct ST128:
    i128 *node
    i64 cap
    int depth

cdef int st128_init(ST128 *t, i64 n) except -1:
    cdef i64 cap = 1
    cdef int depth = 0
    while cap < n:
        cap <<= 1
        depth += 1
    t.cap = cap
    t.depth = depth
    t.node = <i128 *> PyMem_Malloc(2 * cap * sizeof(i128))
    if t.node == NULL:
        raise MemoryError()
    memset(t.node, 0, 2 * cap * sizeof(i128))
    return 0

cdef inline void st128_add(ST128 *t, i64 y, i128 delta) noexcept nogil:
    cdef i64 i = t.cap + y - 1
    while i >= 1:
        t.node[i] += delta
        i >>= 1

cdef inline i128 st128_prefix_excl(ST128 *t, i64 y) noexcept nogil:
    cdef i64 i = t.cap + y - 1
    cdef i128 s = 0
    while i > 1:
        if i & 1:
            s += t.node[i - 1]
        i >>= 1
    return s

cdef inline i128 st128_suffix_excl(ST128 *t, i64 y) noexcept nogil:
    cdef i64 i = t.cap + y - 1
    cdef i128 s = 0
    while i > 1:
        if not i & 1:
            s += t.node[i + 1]
        i >>= 1
    return s


cdef struct ST64:
    i64 *node
    i64 cap
    int depth

cdef int st64_init(ST64 *t, i64 n) except -1:
    cdef i64 cap = 1
    cdef int depth = 0
    while cap < n:
        cap <<= 1
        depth += 1
    t.cap = cap
    t.depth = depth
    t.node = <i64 *> PyMem_Malloc(2 * cap * sizeof(i64))
    if t.node == NULL:
        raise MemoryError()
    memset(t.node, 0, 2 * cap * sizeof(i64))
    return 0

cdef inline void st64_add(ST64 *t, i64 y, i64 delta) noexcept nogil:
    cdef i64 i = t.cap + y - 1
    while i >= 1:
        t.node[i] += delta
        i >>= 1

cdef inline i64 st64_prefix_excl(ST64 *t, i64 y) noexcept nogil:
    cdef i64 i = t.cap + y - 1
    cdef i64 s = 0
    while i > 1:
        if i & 1:
            s += t.node[i - 1]
        i >>= 1
    return s

cdef inline i64 st64_suffix_excl(ST64 *t, i64 y) noexcept nogil:
    cdef i64 i = t.cap + y - 1
    cdef i64 s = 0
    while i > 1:
        if not i & 1:
            s += t.node[i + 1]
        i >>= 1
    return s


# --- flat hash map keyed by node pairs (key 0 never occurs: indices >= 1) ---

cdef struct HMap:
    u64 *keys
    i64 *vals
    u64 mask
    u64 used
    u64 limit

cdef inline u64 _mix(u64 x) noexcept nogil:
    x ^= x >> 30
    x *= <u64> 0xBF58476D1CE4E5B9
    x ^= x >> 27
    x *= <u64> 0x94D049BB133111EB
    x ^= x >> 31
    return x

cdef int h_init(HMap *h, u64 slots) except -1:
    cdef u64 cap = 1024
    while cap < slots:
        cap <<= 1
    h.keys = <u64 *> PyMem_Malloc(cap * sizeof(u64))
    h.vals = <i64 *> PyMem_Malloc(cap * sizeof(i64))
    if h.keys == NULL or h.vals == NULL:
        if h.keys != NULL:
            PyMem_Free(h.keys)
        if h.vals != NULL:
            PyMem_Free(h.vals)
        raise MemoryError()
    memset(h.keys, 0, cap * sizeof(u64))
    h.mask = cap - 1
    h.used = 0
    h.limit = <u64> (cap * 0.85)
    return 0

cdef void h_free(HMap *h) noexcept:
    if h.keys != NULL:
        PyMem_Free(h.keys)
        h.keys = NULL
    if h.vals != NULL:
        PyMem_Free(h.vals)
        h.vals = NULL

cdef int h_grow(HMap *h) except -1:
    cdef u64 old_cap = h.mask + 1
    cdef u64 *old_keys = h.keys
    cdef i64 *old_vals = h.vals
    cdef u64 cap = old_cap << 1
    h.keys = <u64 *> PyMem_Malloc(cap * sizeof(u64))
    h.vals = <i64 *> PyMem_Malloc(cap * sizeof(i64))
    if h.keys == NULL or h.vals == NULL:
        if h.keys != NULL:
            PyMem_Free(h.keys)
        if h.vals != NULL:
            PyMem_Free(h.vals)
        h.keys = old_keys
        h.vals = old_vals
        raise MemoryError()
    memset(h.keys, 0, cap * sizeof(u64))
    h.mask = cap - 1
    h.limit = <u64> (cap * 0.85)
    cdef u64 i, idx, key
    for i in range(old_cap):
        key = old_keys[i]
        if key != 0:
            idx = _mix(key) & h.mask
            while h.keys[idx] != 0:
                idx = (idx + 1) & h.mask
            h.keys[idx] = key
            h.vals[idx] = old_vals[i]
    PyMem_Free(old_keys)
    PyMem_Free(old_vals)
    return 0

cdef inline int h_add(HMap *h, u64 key, i64 delta) except -1:
    cdef u64 idx = _mix(key) & h.mask
    while True:
        if h.keys[idx] == 0:
            h.keys[idx] = key
            h.vals[idx] = delta
            h.used += 1
            if h.used > h.limit:
                h_grow(h)
            return 0
        if h.keys[idx] == key:
            h.vals[idx] += delta
            return 0
        idx = (idx + 1) & h.mask

cdef inline i64 h_get(HMap *h, u64 key) noexcept nogil:
    cdef u64 idx = _mix(key) & h.mask
    while True:
        if h.keys[idx] == key:
            return h.vals[idx]
        if h.keys[idx] == 0:
            return 0
        idx = (idx + 1) & h.mask


# --- sparse 2D product tree over the hash map ---

cdef struct Grid:
    HMap map
    i64 cap
    int depth
    i64 touches

cdef u64 _estimate_slots(double insertions, int depth):
    """Expected distinct node-pair entries under a uniform spread of the
    planned insertions, inflated to a 0.78 load target."""
    cdef double est = 0, cells
    cdef int j, k
    for j in range(depth + 1):
        for k in range(depth + 1):
            cells = (<double> (1 << (depth - j))) * (<double> (1 << (depth - k)))
            if insertions > 0:
                est += cells * (1.0 - exp(-insertions / cells))
    cdef u64 slots = 1024
    while slots * 0.78 < est:
        slots <<= 1
    return slots

cdef int grid_init(Grid *g, i64 n, double planned_insertions) except -1:
    cdef i64 cap = 1
    cdef int depth = 0
    while cap < n:
        cap <<= 1
        depth += 1
    g.cap = cap
    g.depth = depth
    g.touches = 0
    h_init(&g.map, _estimate_slots(planned_insertions, depth))
    return 0

cdef inline int grid_add(Grid *g, i64 x, i64 y, i64 delta) except -1:
    cdef i64 i = g.cap + x - 1
    cdef i64 j
    while i >= 1:
        j = g.cap + y - 1
        while j >= 1:
            h_add(&g.map, (<u64> i << 32) | <u64> j, delta)
            j >>= 1
        i >>= 1
    g.touches += <i64> (g.depth + 1) * (g.depth + 1)
    return 0

cdef int _cover(i64 cap, i64 lo, i64 hi, u64 *out) noexcept nogil:
    """Canonical node cover of leaves [lo, hi]; returns the node count."""
    cdef u64 left = <u64> (cap + lo - 1)
    cdef u64 right = <u64> (cap + hi)
    cdef int cnt = 0
    while left < right:
        if left & 1:
            out[cnt] = left
            cnt += 1
            left += 1
        if right & 1:
            right -= 1
            out[cnt] = right
            cnt += 1
        left >>= 1
        right >>= 1
    return cnt

cdef i64 grid_box(Grid *g, i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) noexcept nogil:
    """Sum over the closed box; bounds must already be normalized and valid."""
    cdef u64 cov_x[128]
    cdef u64 cov_y[128]
    cdef int nx = _cover(g.cap, x_lo, x_hi, cov_x)
    cdef int ny = _cover(g.cap, y_lo, y_hi, cov_y)
    cdef i64 total = 0
    cdef int a, b
    for a in range(nx):
        for b in range(ny):
            total += h_get(&g.map, (cov_x[a] << 32) | cov_y[b])
    g.touches += <i64> nx * ny
    return total


# --- kernels ---

def count_tree(labels, parents, pi):
    """Count occurrences of the flattened corner tree in pi; (count, touches)."""
    cdef i64[::1] lab = labels
    cdef i64[::1] par = parents
    cdef i64[::1] p = pi
    cdef int k = <int> lab.shape[0]
    cdef i64 n = p.shape[0]
    if n == 0:
        return 0, 0
    cdef i128 **bufs = <i128 **> PyMem_Malloc(k * sizeof(void *))
    if bufs == NULL:
        raise MemoryError()
    cdef int v, u
    for v in range(k):
        bufs[v] = NULL
    cdef ST128 tree
    tree.node = NULL
    cdef i64 touches = 0
    cdef i128 total = 0
    cdef i128 *merged
    cdef i128 *out
    cdef i64 x, y
    cdef int label
    cdef bint ascending, prefix
    try:
        for v in range(k - 1, -1, -1):
            merged = NULL
            for u in range(v + 1, k):
                if par[u] == v:
                    if merged == NULL:
                        merged = bufs[u]
                        bufs[u] = NULL
                    else:
                        for x in range(n):
                            merged[x] *= bufs[u][x]
                        PyMem_Free(bufs[u])
                        bufs[u] = NULL
            if merged == NULL:
                merged = <i128 *> PyMem_Malloc(n * sizeof(i128))
                if merged == NULL:
                    raise MemoryError()
                for x in range(n):
                    merged[x] = 1
            if par[v] < 0:
                for x in range(n):
                    total += merged[x]
                PyMem_Free(merged)
                break
            out = <i128 *> PyMem_Malloc(n * sizeof(i128))
            if out == NULL:
                PyMem_Free(merged)
                raise MemoryError()
            st128_init(&tree, n)
            label = <int> lab[v]
            ascending = label == 1 or label == 3
            prefix = label == 1 or label == 2
            if ascending:
                for x in range(n):
                    y = p[x]
                    out[x] = st128_prefix_excl(&tree, y) if prefix else st128_suffix_excl(&tree, y)
                    st128_add(&tree, y, merged[x])
            else:
                for x in range(n - 1, -1, -1):
                    y = p[x]
                    out[x] = st128_prefix_excl(&tree, y) if prefix else st128_suffix_excl(&tree, y)
                    st128_add(&tree, y, merged[x])
            touches += n * (2 * tree.depth + 1)
            PyMem_Free(tree.node)
            tree.node = NULL
            PyMem_Free(merged)
            bufs[v] = out
    finally:
        for v in range(k):
            if bufs[v] != NULL:
                PyMem_Free(bufs[v])
        if tree.node != NULL:
            PyMem_Free(tree.node)
        PyMem_Free(bufs)
    return _py_from_i128(total), touches


def count_3241(pi, m):
    """The strip algorithm for the pattern 3241; returns (count, touches)."""
    cdef i64[::1] p = pi
    cdef i64 n = p.shape[0]
    if n < 4:
        return 0, 0
    cdef i64 mm = m
    cdef i64 touches = 0
    cdef i128 total = 0
    cdef i128 running
    cdef ST64 a1, a12, b1, b21
    cdef i64 lo, hi, x, y, fl, greater, smaller, below, below12
    cdef int d
    for lo in range(0, n, mm):
        hi = lo + mm
        if hi > n:
            hi = n
        st64_init(&a1, n)
        st64_init(&a12, n)
        st64_init(&b1, n)
        st64_init(&b21, n)
        d = a1.depth
        running = 0
        for x in range(n):
            y = p[x]
            if y <= lo:
                st64_add(&b1, y, 1)
                greater = st64_suffix_excl(&b1, y)
                st64_add(&b21, y, greater)
                running += <i128> greater * (y - 1 - st64_prefix_excl(&b1, y)) - st64_suffix_excl(&b21, y)
                touches += 5 * d + 2
            elif y > hi:
                st64_add(&a1, y, 1)
                smaller = st64_prefix_excl(&a1, y)
                st64_add(&a12, y, smaller)
                running += <i128> (smaller * (smaller - 1) // 2) - st64_prefix_excl(&a12, y)
                touches += 4 * d + 2
                fl = (y - 1) // mm * mm
                if fl > 0:
                    below = st64_prefix_excl(&a1, fl) + a1.node[a1.cap + fl - 1]
                    below12 = st64_prefix_excl(&a12, fl) + a12.node[a12.cap + fl - 1]
                    running -= <i128> (below * (below - 1) // 2) - below12
                    touches += 2 * d + 2
            else:
                total += running
        PyMem_Free(a1.node)
        PyMem_Free(a12.node)
        PyMem_Free(b1.node)
        PyMem_Free(b21.node)

    cdef i64 *inv = <i64 *> PyMem_Malloc((n + 1) * sizeof(i64))
    if inv == NULL:
        raise MemoryError()
    for x in range(n):
        inv[p[x]] = x + 1

    # plan the insertions so the hash table can be sized up front
    cdef double planned = 0
    cdef i64 z, py_, pz, ztop
    for y in range(1, n + 1):
        fl = (y - 1) // mm * mm
        py_ = inv[y]
        for z in range(fl + 1, y):
            if py_ < inv[z]:
                planned += 1

    cdef Grid g
    try:
        grid_init(&g, n, planned)
    except MemoryError:
        PyMem_Free(inv)
        raise
    try:
        for y in range(1, n + 1):
            fl = (y - 1) // mm * mm
            py_ = inv[y]
            for z in range(fl + 1, y):
                # only descent pairs can land in a later query box (the box
                # forces the 2's position before the 1's)
                if py_ < inv[z]:
                    grid_add(&g, inv[z], py_, 1)
            ztop = fl + mm
            if ztop > n:
                ztop = n
            for z in range(y + 1, ztop + 1):
                pz = inv[z]
                if py_ < pz:
                    # box (pz, n] x (py_, pz), normalized to closed bounds
                    if pz + 1 <= n and py_ + 1 <= pz - 1:
                        total += grid_box(&g, pz + 1, n, py_ + 1, pz - 1)
        touches += g.touches
    finally:
        h_free(&g.map)
        PyMem_Free(inv)
    return _py_from_i128(total), touches


def count_3214(pi, m):
    """The strip algorithm for the pattern 3214; returns (count, touches)."""
    cdef i64[::1] p = pi
    cdef i64 n = p.shape[0]
    if n < 4:
        return 0, 0
    cdef i64 mm = m
    cdef i64 touches = 0
    cdef i128 total = 0

    cdef i64 *inv = <i64 *> PyMem_Malloc((n + 1) * sizeof(i64))
    cdef i64 *invseq = <i64 *> PyMem_Malloc(n * sizeof(i64))
    if inv == NULL or invseq == NULL:
        if inv != NULL:
            PyMem_Free(inv)
        if invseq != NULL:
            PyMem_Free(invseq)
        raise MemoryError()
    cdef i64 x, y
    for x in range(n):
        inv[p[x]] = x + 1
    for x in range(n):
        invseq[x] = inv[x + 1]

    cdef ST64 ones, pairs
    cdef i128 running, saved
    cdef i64 lo, hi
    cdef int pass_idx, d
    cdef bint subtract
    cdef i64 *seq
    for pass_idx in range(2):
        subtract = pass_idx == 0
        if pass_idx == 0:
            seq = &p[0]
        else:
            seq = invseq
        for lo in range(mm, n, mm):
            hi = lo + mm
            if hi > n:
                hi = n
            st64_init(&ones, n)
            st64_init(&pairs, n)
            d = ones.depth
            running = 0
            saved = 0
            for x in range(n):
                y = seq[x]
                if y <= lo:
                    running += st64_suffix_excl(&pairs, y)
                    st64_add(&pairs, y, st64_suffix_excl(&ones, y))
                    st64_add(&ones, y, 1)
                    touches += 4 * d + 2
                elif y <= hi:
                    total += running
                    if subtract:
                        total -= saved
                if (x + 1) % mm == 0:
                    saved = running
            PyMem_Free(ones.node)
            PyMem_Free(pairs.node)

    cdef Grid g
    try:
        grid_init(&g, n, <double> n)
    except MemoryError:
        PyMem_Free(inv)
        PyMem_Free(invseq)
        raise
    cdef i64 i4, i3, i1, v4, v3, v1, vfl, pfl, lo1
    try:
        for x in range(n):
            grid_add(&g, x + 1, p[x], 1)
        for i4 in range(1, n + 1):
            v4 = p[i4 - 1]
            vfl = (v4 - 1) // mm * mm
            pfl = (i4 - 1) // mm * mm
            for i3 in range(pfl + 1, i4):
                v3 = p[i3 - 1]
                lo1 = vfl if vfl > v3 else v3
                for v1 in range(lo1 + 1, v4):
                    i1 = inv[v1]
                    if i1 + 1 < i3 and v3 + 1 < v1:
                        total += grid_box(&g, i1 + 1, i3 - 1, v3 + 1, v1 - 1)
        touches += g.touches
    finally:
        h_free(&g.map)
        PyMem_Free(inv)
        PyMem_Free(invseq)
    return _py_from_i128(total), touches
