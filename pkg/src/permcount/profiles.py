"""Fast pattern profiles.

The 3-profile comes from two tree formulas, their reflections, and the
binomial identity.  The 4-profile needs one count from outside the tree
span; either strip algorithm supplies it, and an exact 24 x 24 solve then
pins all twenty-four counts at once.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from . import backend
from .algebra import (
    PatternSum,
    builtin_formulas,
    evaluate_formula,
    load_basis4,
    solve_for_target,
)
from .errors import UnsupportedAlgorithmError
from .perms import (
    D4_ELEMENTS,
    apply_d4,
    k_profile_brute,
    lex_patterns,
    validate_permutation,
)
from .trees import enumerate_corner_trees

PATTERNS3 = tuple(lex_patterns(3))
PATTERNS4 = tuple(lex_patterns(4))


def _orbit(base):
    """Map each pattern in the D4 orbit of base to one element reaching it."""
    out = {}
    for g in D4_ELEMENTS:
        out.setdefault(apply_d4(g, base), g)
    return out

_ORBIT_123 = _orbit((1, 2, 3))
_ORBIT_213 = _orbit((2, 1, 3))
_ORBIT_3241 = _orbit((3, 2, 4, 1))
_ORBIT_3214 = _orbit((3, 2, 1, 4))

# bases with explicit tree formulas; the three order-4 orbits cover the
# eight patterns counted by trees alone
_FORMULA_BASES = {
    (1, 2): "12",
    (1, 2, 3): "123",
    (2, 1, 3): "213",
    (1, 2, 3, 4): "1234",
    (2, 1, 3, 4): "2134",
    (2, 1, 4, 3): "2143",
}


@lru_cache(maxsize=None)
def _formula_route(pattern):
    """(formula, g) with #pattern(pi) = formula evaluated on g^-1 pi, or None."""
    from .algebra import CornerTreeFormula

    named = dict(builtin_formulas())
    named["12"] = CornerTreeFormula({"R(NE)": 1})
    for base, key in _FORMULA_BASES.items():
        if len(base) == len(pattern):
            for g in D4_ELEMENTS:
                if apply_d4(g, base) == pattern:
                    return named[key], g
    return None


def _int(value: Fraction) -> int:
    assert value.denominator == 1, value
    return int(value)


def _count_by_formula(pattern, pi, *, cost=None) -> int:
    route = _formula_route(tuple(pattern))
    if route is None:
        raise UnsupportedAlgorithmError(
            "no direct tree formula for pattern %s" % (pattern,)
        )
    formula, g = route
    return _int(evaluate_formula(formula, apply_d4(g.inverse(), pi), cost=cost))


def count_3241_fast(pi, m=None, *, cost=None) -> int:
    """Count 3241 with the strip-and-box algorithm; subquadratic in n."""
    validate_permutation(pi)
    count, touches = backend.count_3241(pi, m)
    if cost is not None:
        cost.add(touches)
    return count


def count_3214_strips(pi, m=None, *, cost=None) -> int:
    """Count 3214 with the three-phase strip algorithm; near linear space."""
    validate_permutation(pi)
    count, touches = backend.count_3214(pi, m)
    if cost is not None:
        cost.add(touches)
    return count


def _count_in_orbit(pattern, pi, orbit, counter, m, cost) -> int:
    g = orbit.get(tuple(pattern))
    if g is None:
        raise UnsupportedAlgorithmError(
            "pattern %s is outside this algorithm's orbit" % (pattern,)
        )
    count, touches = counter(apply_d4(g.inverse(), pi), m)
    if cost is not None:
        cost.add(touches)
    return count


_BASIS_CACHE = None


def _basis4():
    global _BASIS_CACHE
    if _BASIS_CACHE is None:
        _BASIS_CACHE = load_basis4()
    return _BASIS_CACHE


def _solve_square(rows, rhs):
    """Exact Gaussian elimination for a small dense rational system."""
    size = len(rows)
    work = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if work[r][col])
        work[col], work[pivot] = work[pivot], work[col]
        pv = work[col][col]
        for r in range(size):
            if r != col and work[r][col]:
                factor = work[r][col] / pv
                for c in range(col, size + 1):
                    work[r][c] -= factor * work[col][c]
    return [work[i][size] / work[i][i] for i in range(size)]


def profile3(pi, *, cost=None) -> dict:
    """Exact 3-profile in one pass of tree formulas per entry.

    Counts 123 and 213 directly, their reflections via the D4 action, and
    the last entry from the identity that all six sum to C(n, 3).
    """
    pi = validate_permutation(pi)
    n = len(pi)
    out = {p: 0 for p in PATTERNS3}
    if n < 3:
        return out
    for target, orbit in (((1, 2, 3), _ORBIT_123), ((3, 2, 1), _ORBIT_123),
                          ((2, 1, 3), _ORBIT_213), ((1, 3, 2), _ORBIT_213),
                          ((2, 3, 1), _ORBIT_213)):
        base = (1, 2, 3) if orbit is _ORBIT_123 else (2, 1, 3)
        formula = builtin_formulas()["".join(str(v) for v in base)]
        g = orbit[target]
        out[target] = _int(evaluate_formula(formula, apply_d4(g.inverse(), pi), cost=cost))
    rest = comb(n, 3) - sum(out.values())
    assert rest >= 0, out
    out[(3, 1, 2)] = rest
    return out


def profile4(pi, *, method: str = "auto", algorithm: str = "3241", m=None, cost=None) -> dict:
    """Exact 4-profile: 23 tree formulas, one strip count, one exact solve.

    method "auto" uses the brute oracle below n = 24 where strips degenerate
    and brute force is instant; "fast" forces the formula path at any size;
    "brute" forces the oracle.  algorithm picks which strip count closes the
    system, "3241" or "3214".
    """
    pi = validate_permutation(pi)
    n = len(pi)
    if n < 4:
        return {p: 0 for p in PATTERNS4}
    if method == "auto":
        method = "brute" if n < 24 else "fast"
    if method == "brute":
        return dict(zip(PATTERNS4, k_profile_brute(pi, 4)))
    if method != "fast":
        raise ValueError("method must be auto, fast or brute, got %r" % method)

    formulas, basis_rows = _basis4()
    rows = []
    rhs = []
    for formula, row in zip(formulas, basis_rows):
        rows.append([row.get(p, 0) for p in PATTERNS4])
        rhs.append(_int(evaluate_formula(formula, pi, cost=cost)))
    if algorithm == "3241":
        unit, counter = (3, 2, 4, 1), backend.count_3241
    elif algorithm == "3214":
        unit, counter = (3, 2, 1, 4), backend.count_3214
    else:
        raise UnsupportedAlgorithmError(
            "profile4 algorithm must be 3241 or 3214, got %r" % algorithm
        )
    count, touches = counter(pi, m)
    if cost is not None:
        cost.add(touches)
    rows.append([1 if p == unit else 0 for p in PATTERNS4])
    rhs.append(count)

    solution = _solve_square(rows, rhs)
    out = {}
    for p, value in zip(PATTERNS4, solution):
        assert value.denominator == 1 and value >= 0, (p, value)
        out[p] = int(value)
    return out


@lru_cache(maxsize=None)
def _solved_formula(pattern):
    pool = []
    for size in range(1, len(pattern) + 1):
        pool.extend(enumerate_corner_trees(size))
    return solve_for_target(PatternSum({pattern: 1}), pool)


def count_pattern(pattern, pi, *, algorithm: str = "auto", m=None, cost=None) -> int:
    """Count occurrences of a pattern, choosing the cheapest exact route.

    algorithm: "auto" picks per pattern; "tree" forces a corner-tree formula
    (solving for one if no built-in applies); "3241"/"3214" force the strip
    algorithms across their D4 orbits; "profile" reads the full 4-profile;
    "brute" forces the oracle.
    """
    pattern = tuple(validate_permutation(pattern))
    pi = validate_permutation(pi)
    k, n = len(pattern), len(pi)
    from .perms import count_pattern_brute

    if algorithm == "brute":
        return count_pattern_brute(pattern, pi)
    if algorithm == "tree":
        if _formula_route(pattern) is not None:
            return _count_by_formula(pattern, pi, cost=cost)
        formula = _solved_formula(pattern)
        if formula is None:
            raise UnsupportedAlgorithmError(
                "pattern %s has no corner-tree formula" % (pattern,)
            )
        return _int(evaluate_formula(formula, pi, cost=cost))
    if algorithm == "3241":
        return _count_in_orbit(pattern, pi, _ORBIT_3241, backend.count_3241, m, cost)
    if algorithm == "3214":
        return _count_in_orbit(pattern, pi, _ORBIT_3214, backend.count_3214, m, cost)
    if algorithm == "profile":
        if k != 4:
            raise UnsupportedAlgorithmError("profile route needs a 4-pattern")
        return profile4(pi, method="fast", m=m, cost=cost)[pattern]
    if algorithm != "auto":
        raise UnsupportedAlgorithmError("unknown algorithm %r" % algorithm)

    if k == 0:
        return 1
    if k == 1:
        return n
    if k <= 3 or pattern in _FORMULA_BASES or _formula_route(pattern) is not None:
        return _count_by_formula(pattern, pi, cost=cost)
    if k == 4:
        if pattern in _ORBIT_3241:
            return _count_in_orbit(pattern, pi, _ORBIT_3241, backend.count_3241, m, cost)
        if pattern in _ORBIT_3214:
            return _count_in_orbit(pattern, pi, _ORBIT_3214, backend.count_3214, m, cost)
        return profile4(pi, m=m, cost=cost)[pattern]
    return count_pattern_brute(pattern, pi)
