"""End-to-end acceptance checks, one test per guaranteed property.

Each test here pins one externally visible promise of the package: exact
agreement with enumeration oracles, the published dimensions and vectors,
statistical behavior under independence, and the growth rate of the
instrumented data-structure work.  Run with -v for one verdict line each.
"""

import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from permcount import backend
from permcount.algebra import (
    builtin_formulas,
    expand_formula,
    expand_tree,
    orthogonal_complement_4,
    span_dimension,
)
from permcount.cli import main
from permcount.perms import (
    D4_ELEMENTS,
    apply_d4,
    count_pattern_brute,
    k_profile_brute,
    lex_patterns,
    pattern_of,
    random_permutation,
)
from permcount.profiles import (
    PATTERNS4,
    count_3214_strips,
    count_3241_fast,
    count_pattern,
    profile4,
)
from permcount.stats import tstar
from permcount.trees import TouchCounter, count_corner_tree, enumerate_corner_trees, parse_tree

from oracles import brute_tree_occurrences

EXTREME = {
    (1, 2, 3, 4), (1, 2, 4, 3), (2, 1, 3, 4), (2, 1, 4, 3),
    (3, 4, 1, 2), (3, 4, 2, 1), (4, 3, 1, 2), (4, 3, 2, 1),
}


def _sum(spec: dict):
    from permcount.algebra import PatternSum
    from permcount.perms import parse_pattern

    return PatternSum({parse_pattern(p): c for p, c in spec.items()})


def _orbit(base):
    return {apply_d4(g, base) for g in D4_ELEMENTS}


def test_paper_value_132(capsys):
    started = time.monotonic()
    assert main(["count", "132", "2 3 6 4 7 5 1"]) == 0
    assert capsys.readouterr().out == "7\n"
    assert time.monotonic() - started < 1.0


def test_oracle_equivalence_patterns():
    # route each pattern through its genuine fast path: tree formulas for
    # size 3 and the eight formula-reachable 4-patterns, the two strip
    # algorithms across their symmetry orbits, and the profile solve for
    # the four patterns only it can reach
    started = time.monotonic()
    tree_patterns = _orbit((1, 2, 3, 4)) | _orbit((2, 1, 3, 4)) | _orbit((2, 1, 4, 3))
    routes = {}
    for sigma in lex_patterns(3):
        routes[sigma] = "auto"
    for sigma in lex_patterns(4):
        if sigma in tree_patterns:
            routes[sigma] = "tree"
        elif sigma in _orbit((3, 2, 4, 1)):
            routes[sigma] = "3241"
        elif sigma in _orbit((3, 2, 1, 4)):
            routes[sigma] = "3214"
        else:
            routes[sigma] = "profile"
    assert len(routes) == 30
    assert sorted(routes.values()).count("profile") == 4

    rng = random.Random(1202)
    for trial in range(200):
        pi = random_permutation(rng.randint(4, 12), rng)
        for sigma, algorithm in routes.items():
            expected = count_pattern_brute(sigma, pi)
            assert count_pattern(sigma, pi, algorithm=algorithm) == expected, (
                sigma,
                pi,
            )
    assert time.monotonic() - started < 120


def test_oracle_equivalence_trees():
    started = time.monotonic()
    pool = []
    for size in range(1, 5):
        pool.extend(enumerate_corner_trees(size))
    assert len(pool) == 219
    rng = random.Random(1203)
    perms = [random_permutation(rng.randint(1, 8), rng) for _ in range(50)]
    for t in pool:
        for pi in perms:
            assert count_corner_tree(t, pi) == brute_tree_occurrences(t, pi), (
                str(t),
                pi,
            )
    assert time.monotonic() - started < 300


def test_expansion_regressions():
    assert expand_tree(parse_tree("R(NE)")) == _sum({"12": 1})
    assert expand_tree(parse_tree("R(SE(NE))")) == _sum({"213": 1, "312": 1})
    assert expand_tree(parse_tree("R(NE(SW))")) == _sum({"12": 1, "123": 2, "213": 2})
    assert expand_tree(parse_tree("R")) == _sum({"1": 1})
    ten_tree = builtin_formulas()["2143"]
    assert len(ten_tree.terms) == 10
    assert expand_formula(ten_tree) == _sum({"2143": 1})
    assert expand_formula(builtin_formulas()["2134"]) == _sum({"2134": 1})


@pytest.mark.slow
def test_span_dimensions():
    assert span_dimension(3)[0] == 6
    assert span_dimension(4)[0] == 23
    assert span_dimension(5)[0] == 100


def test_orthogonal_vector():
    expected = _sum(
        {
            "1324": 1, "1342": -1, "1423": -1, "1432": 1,
            "2314": -1, "2341": 1, "2413": 1, "2431": -1,
            "3124": -1, "3142": 1, "3214": 1, "3241": -1,
            "4123": 1, "4132": -1, "4213": -1, "4231": 1,
        }
    )
    nvec = orthogonal_complement_4()
    assert nvec == expected
    for size in range(1, 5):
        for t in enumerate_corner_trees(size):
            assert nvec.inner(expand_tree(t)) == 0, str(t)


def test_strip_algorithms_match_oracle():
    started = time.monotonic()
    rng = random.Random(1204)
    for trial in range(200):
        n = rng.randint(4, 50)
        pi = random_permutation(n, rng)
        expected_3241 = count_pattern_brute((3, 2, 4, 1), pi)
        expected_3214 = count_pattern_brute((3, 2, 1, 4), pi)
        for m in (1, 2, None, n):
            assert count_3241_fast(pi, m) == expected_3241, (n, m)
            assert count_3214_strips(pi, m) == expected_3214, (n, m)
    assert time.monotonic() - started < 300


def test_full_4profile():
    rng = random.Random(1205)
    for trial in range(100):
        n = rng.randint(4, 12)
        pi = random_permutation(n, rng)
        oracle = k_profile_brute(pi, 4)
        fast = profile4(pi, method="fast")
        assert list(fast.values()) == oracle
        assert all(isinstance(v, int) and v >= 0 for v in fast.values())
        assert sum(fast.values()) == comb(n, 4)
        assert list(fast) == list(PATTERNS4)


def test_tstar_correctness():
    rng = random.Random(1206)
    for trial in range(100):
        n = rng.randint(4, 12)
        pi = random_permutation(n, rng)
        expected = sum(
            1
            for quad in combinations(range(n), 4)
            if pattern_of([pi[i] for i in quad]) in EXTREME
        )
        assert tstar(pi).raw == expected, pi
    for n in (4, 7, 11):
        assert tstar(tuple(range(1, n + 1))).raw == comb(n, 4)
    pi = random_permutation(9, rng)
    base = tstar(pi).raw
    for g in D4_ELEMENTS:
        assert tstar(apply_d4(g, pi)).raw == base


def test_tstar_null_concentration():
    rng = random.Random(1207)
    total = Fraction(0)
    for trial in range(200):
        pi = random_permutation(100, rng)
        total += tstar(pi).normalized
    mean = total / 200
    assert Fraction("0.323") <= mean <= Fraction("0.343"), float(mean)


@pytest.mark.slow
def test_scaling_touch_counts():
    if backend.active_backend() != "compiled":
        pytest.skip("touch-count scaling at these sizes needs the compiled core")
    rng = random.Random(1208)

    def tstar_touches(n):
        cost = TouchCounter()
        tstar(random_permutation(n, rng), cost=cost)
        return cost.total

    def strip_touches(n):
        cost = TouchCounter()
        count_3241_fast(random_permutation(n, rng), cost=cost)
        return cost.total

    ratio_tstar = tstar_touches(2**17) / tstar_touches(2**16)
    assert ratio_tstar < 2.5, ratio_tstar
    ratio_3241 = strip_touches(2**15) / strip_touches(2**14)
    assert ratio_3241 < 3.3, ratio_3241
