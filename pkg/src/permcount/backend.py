"""Kernel backend selection.

At import time the compiled extension is preferred; if it is absent (not
built, wrong ABI) the pure-Python twin takes over transparently.  Tests and
benchmarks can force a backend with :func:`set_backend` or the
``PERMCOUNT_BACKEND`` environment variable.

The compiled tree-counting kernel accumulates in 128-bit integers; counts fit
in |T| * ceil(log2(n+1)) bits, so calls that could exceed 126 bits are routed
to the pure twin (arbitrary precision) regardless of the active backend.
"""

from __future__ import annotations

import os
from array import array
from math import isqrt

from . import kernels_py
from .errors import InvalidRangeError

try:
    from . import _kernels
except ImportError:
    _kernels = None

_IMPLS = {"python": kernels_py}
if _kernels is not None:
    _IMPLS["compiled"] = _kernels

_active = os.environ.get("PERMCOUNT_BACKEND") or ("compiled" if _kernels else "python")
if _active not in _IMPLS:
    raise ImportError(
        "PERMCOUNT_BACKEND=%r but available backends are %s" % (_active, sorted(_IMPLS))
    )


def available_backends() -> tuple:
    return tuple(sorted(_IMPLS))


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _IMPLS:
        raise InvalidRangeError(
            "unknown backend %r; available: %s" % (name, sorted(_IMPLS))
        )
    _active = name


def _as_array(pi) -> array:
    return pi if isinstance(pi, array) else array("q", pi)


def count_tree(labels, parents, pi):
    """Dispatch the tree-count scan; returns (count, touches)."""
    impl = _IMPLS[_active]
    if impl is not kernels_py:
        if len(labels) * max(1, len(pi).bit_length()) > 126:
            impl = kernels_py
    if impl is kernels_py:
        return kernels_py.count_tree(labels, parents, pi)
    return impl.count_tree(labels, parents, _as_array(pi))


def _normalize_m(n: int, m) -> int:
    if m is None:
        return 0  # sentinel: each algorithm applies its own default
    m = int(m)
    if m < 1:
        raise InvalidRangeError("strip width m must be >= 1, got %d" % m)
    return min(m, n) if n else 1


def count_3241(pi, m=None):
    """Dispatch the n^{3/2} 3241 counter; returns (count, touches)."""
    n = len(pi)
    m = _normalize_m(n, m) or max(1, isqrt(n))
    impl = _IMPLS[_active]
    if impl is kernels_py:
        return kernels_py.count_3241(pi, m)
    return impl.count_3241(_as_array(pi), m)


def count_3214(pi, m=None):
    """Dispatch the n^{5/3} 3214 counter; returns (count, touches)."""
    n = len(pi)
    if m is None:
        m = 1
        while (m + 1) ** 3 <= n:
            m += 1
    else:
        m = _normalize_m(n, m)
    impl = _IMPLS[_active]
    if impl is kernels_py:
        return kernels_py.count_3214(pi, m)
    return impl.count_3214(_as_array(pi), m)
