"""Rank statistics: tau, t*, the permutation test, and CSV loading."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from permcount.errors import NTooSmallError, OutOfRangeError, TiesPresentError
from permcount.perms import (
    D4_ELEMENTS,
    apply_d4,
    pattern_of,
    random_permutation,
    reverse_perm,
)
from permcount.stats import (
    STABLE,
    STRICT,
    TStarResult,
    kendall_tau,
    load_bivariate_csv,
    rank_transform,
    tstar,
    tstar_pvalue,
)

EXTREME = {
    (1, 2, 3, 4), (1, 2, 4, 3), (2, 1, 3, 4), (2, 1, 4, 3),
    (3, 4, 1, 2), (3, 4, 2, 1), (4, 3, 1, 2), (4, 3, 2, 1),
}


def brute_tstar_raw(pi):
    return sum(
        1
        for quad in combinations(range(len(pi)), 4)
        if pattern_of([pi[i] for i in quad]) in EXTREME
    )


def brute_tau(pi):
    n = len(pi)
    conc = disc = 0
    for i, j in combinations(range(n), 2):
        if pi[i] < pi[j]:
            conc += 1
        else:
            disc += 1
    return Fraction(conc - disc, math.comb(n, 2))


# --- rank transform ---


def test_rank_transform_examples():
    assert rank_transform([(0.1, 5.0), (0.2, 3.0), (0.3, 4.0)]) == (3, 1, 2)
    # x order in the sample is irrelevant
    assert rank_transform([(0.3, 4.0), (0.1, 5.0), (0.2, 3.0)]) == (3, 1, 2)
    assert rank_transform([(10, 10)]) == (1,)


def test_rank_transform_monotone_invariance():
    rng = random.Random(90210)
    sample = [(rng.random(), rng.random()) for _ in range(40)]
    base = rank_transform(sample)
    rescaled = [(math.exp(x), 2 * y + 7) for x, y in sample]
    assert rank_transform(rescaled) == base


def test_rank_transform_tie_policies():
    with pytest.raises(TiesPresentError):
        rank_transform([(1, 3), (1, 4)])
    with pytest.raises(TiesPresentError):
        rank_transform([(1, 4), (2, 4)])
    # stable policy ranks ties by sample order
    assert rank_transform([(1, 3), (1, 4)], ties=STABLE) == (1, 2)
    assert rank_transform([(2, 5), (1, 5)], ties=STABLE) == (2, 1)


def test_rank_transform_argument_errors():
    with pytest.raises(NTooSmallError):
        rank_transform([])
    with pytest.raises(OutOfRangeError):
        rank_transform([(1, 2)], ties="midrank")


# --- Kendall's tau ---


def test_tau_known_values():
    assert kendall_tau((1, 2, 3, 4)) == 1
    assert kendall_tau((4, 3, 2, 1)) == -1
    assert kendall_tau((2, 4, 1, 3)) == 0
    assert kendall_tau((2, 1)) == -1


def test_tau_matches_pair_enumeration():
    rng = random.Random(1912)
    for trial in range(15):
        pi = random_permutation(rng.randint(2, 60), rng)
        assert kendall_tau(pi) == brute_tau(pi)
        assert kendall_tau(reverse_perm(pi)) == -kendall_tau(pi)


def test_tau_needs_two_points():
    with pytest.raises(NTooSmallError):
        kendall_tau((1,))


# --- t* ---


def test_tstar_identity_is_extremal():
    for n in (4, 5, 9):
        result = tstar(tuple(range(1, n + 1)))
        assert result == TStarResult(raw=math.comb(n, 4), normalized=Fraction(1), n=n)


def test_tstar_matches_quadruple_enumeration():
    rng = random.Random(1937)
    for trial in range(25):
        pi = random_permutation(rng.randint(4, 12), rng)
        result = tstar(pi)
        raw = brute_tstar_raw(pi)
        assert result.raw == raw
        assert result.normalized == Fraction(raw, math.comb(len(pi), 4))


def test_tstar_is_symmetry_invariant():
    rng = random.Random(1938)
    pi = random_permutation(15, rng)
    base = tstar(pi).raw
    for g in D4_ELEMENTS:
        assert tstar(apply_d4(g, pi)).raw == base


def test_tstar_needs_four_points():
    with pytest.raises(NTooSmallError):
        tstar((2, 1, 3))


# --- permutation test ---


def test_pvalue_is_reproducible():
    rng = random.Random(64)
    sample = [(rng.random(), rng.random()) for _ in range(24)]
    first = tstar_pvalue(sample, iterations=60, seed=5)
    assert tstar_pvalue(sample, iterations=60, seed=5) == first
    assert first.denominator == 61 or 61 % first.denominator == 0


def test_pvalue_detects_exact_dependence():
    xs = list(range(30))
    sample = [(x, 2 * x + 1) for x in xs]
    # y is a monotone function of x: no shuffle can look more dependent
    assert tstar_pvalue(sample, iterations=99, seed=3) == Fraction(1, 100)


def test_pvalue_single_iteration_support():
    rng = random.Random(65)
    sample = [(rng.random(), rng.random()) for _ in range(12)]
    for seed in range(6):
        assert tstar_pvalue(sample, iterations=1, seed=seed) in (
            Fraction(1, 2),
            Fraction(1, 1),
        )


def test_pvalue_argument_errors():
    sample = [(float(i), float(i)) for i in range(8)]
    with pytest.raises(OutOfRangeError):
        tstar_pvalue(sample, iterations=0)
    with pytest.raises(TiesPresentError):
        tstar_pvalue([(1.0, 2.0), (1.0, 3.0)] * 4)


# --- CSV loading ---


def test_csv_with_header(tmp_path):
    f = tmp_path / "data.csv"
    f.write_text("x,y\n1,4\n2,6\n3,5\n")
    assert load_bivariate_csv(str(f)) == [(1.0, 4.0), (2.0, 6.0), (3.0, 5.0)]


def test_csv_without_header_and_blank_lines(tmp_path):
    f = tmp_path / "data.csv"
    f.write_text("1,4\n\n2,6\n,\n3,5\n")
    assert load_bivariate_csv(str(f)) == [(1.0, 4.0), (2.0, 6.0), (3.0, 5.0)]


def test_csv_column_selection(tmp_path):
    f = tmp_path / "wide.csv"
    f.write_text("id,a,b\n0,1.5,9\n1,2.5,8\n")
    assert load_bivariate_csv(str(f), col_x=2, col_y=3) == [(1.5, 9.0), (2.5, 8.0)]


def test_csv_errors(tmp_path):
    short = tmp_path / "short.csv"
    short.write_text("1,2\n3\n")
    with pytest.raises(OutOfRangeError):
        load_bivariate_csv(str(short))

    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,oops\n")
    with pytest.raises(OutOfRangeError):
        load_bivariate_csv(str(bad))

    empty = tmp_path / "empty.csv"
    empty.write_text("x,y\n")
    with pytest.raises(NTooSmallError):
        load_bivariate_csv(str(empty))

    with pytest.raises(OutOfRangeError):
        load_bivariate_csv(str(short), col_x=0)
