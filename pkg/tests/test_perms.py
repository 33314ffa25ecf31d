import random

import pytest

from permcount.errors import (
    DuplicateValueError,
    KTooLargeError,
    OutOfRangeError,
)
from permcount.perms import (
    D4_ELEMENTS,
    apply_d4,
    count_pattern_brute,
    d4_element,
    invert_perm,
    k_profile_brute,
    lex_patterns,
    parse_pattern,
    parse_permutation,
    pattern_index,
    pattern_of,
    pattern_str,
    random_permutation,
    reverse_perm,
    validate_permutation,
)


def test_validate_accepts_and_returns_tuple():
    assert validate_permutation([2, 1, 3]) == (2, 1, 3)
    assert validate_permutation(()) == ()


def test_validate_rejects_duplicates_and_range():
    with pytest.raises(DuplicateValueError):
        validate_permutation([1, 2, 2])
    with pytest.raises(OutOfRangeError):
        validate_permutation([0, 1])
    with pytest.raises(OutOfRangeError):
        validate_permutation([1, 3])
    with pytest.raises(OutOfRangeError):
        validate_permutation([1.0, 2])
    with pytest.raises(OutOfRangeError):
        validate_permutation([True, 2])


def test_parse_permutation_separators():
    assert parse_permutation("2 3 6 4 7 5 1") == (2, 3, 6, 4, 7, 5, 1)
    assert parse_permutation("2,3,6,4,7,5,1") == (2, 3, 6, 4, 7, 5, 1)
    assert parse_permutation(" 1 ,2 ") == (1, 2)
    with pytest.raises(OutOfRangeError):
        parse_permutation("1 2 x")


def test_parse_pattern_digit_form():
    assert parse_pattern("2143") == (2, 1, 4, 3)
    assert parse_pattern("1") == (1,)
    assert parse_pattern("2 1 4 3") == (2, 1, 4, 3)
    # ten entries force the spaced form
    spaced = " ".join(str(v) for v in range(10, 0, -1))
    assert parse_pattern(spaced) == tuple(range(10, 0, -1))


def test_pattern_str_round_trip():
    rng = random.Random(11)
    for _ in range(50):
        sigma = random_permutation(rng.randint(1, 9), rng)
        assert parse_pattern(pattern_str(sigma)) == sigma


def test_pattern_of():
    assert pattern_of((6, 4, 7)) == (2, 1, 3)
    assert pattern_of((5,)) == (1,)
    rng = random.Random(3)
    for _ in range(40):
        vals = rng.sample(range(1000), rng.randint(1, 8))
        pat = pattern_of(vals)
        assert sorted(pat) == list(range(1, len(vals) + 1))
        # order relations preserved
        for i in range(len(vals)):
            for j in range(len(vals)):
                assert (vals[i] < vals[j]) == (pat[i] < pat[j])


def test_lex_patterns_and_index():
    for k in (1, 2, 3, 4):
        pats = lex_patterns(k)
        assert len(pats) == [1, 1, 2, 6, 24][k]
        assert pats == sorted(pats)
        for i, p in enumerate(pats):
            assert pattern_index(p) == i


def test_count_brute_known_values():
    assert count_pattern_brute((1, 3, 2), parse_permutation("2 3 6 4 7 5 1")) == 7
    assert count_pattern_brute((), (3, 1, 2)) == 1
    assert count_pattern_brute((1, 2, 3), (2, 1)) == 0
    assert count_pattern_brute((1, 2), (1, 2, 3, 4)) == 6


def test_k_profile_brute_sums():
    from math import comb

    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 8)
        pi = random_permutation(n, rng)
        for k in range(1, n + 1):
            prof = k_profile_brute(pi, k)
            assert sum(prof) == comb(n, k)
    with pytest.raises(KTooLargeError):
        k_profile_brute((1, 2), 3)
    with pytest.raises(KTooLargeError):
        k_profile_brute((1, 2), 0)


def test_reverse_invert():
    assert reverse_perm((2, 3, 1)) == (1, 3, 2)
    assert invert_perm((2, 3, 1)) == (3, 1, 2)
    rng = random.Random(5)
    for _ in range(30):
        pi = random_permutation(rng.randint(1, 30), rng)
        assert reverse_perm(reverse_perm(pi)) == pi
        assert invert_perm(invert_perm(pi)) == pi


def test_d4_is_a_group_of_eight():
    assert len(set(D4_ELEMENTS)) == 8
    rng = random.Random(13)
    for g in D4_ELEMENTS:
        assert g.inverse().compose(g) == d4_element("id")
        for h in D4_ELEMENTS:
            gh = g.compose(h)
            assert gh in D4_ELEMENTS
            for _ in range(3):
                pi = random_permutation(rng.randint(1, 12), rng)
                assert apply_d4(gh, pi) == apply_d4(g, apply_d4(h, pi))


def test_d4_orbit_of_counts():
    # pattern counts are carried along the symmetry
    rng = random.Random(17)
    for _ in range(15):
        pi = random_permutation(rng.randint(4, 9), rng)
        sigma = random_permutation(rng.randint(2, 4), rng)
        for g in D4_ELEMENTS:
            assert count_pattern_brute(apply_d4(g, sigma), apply_d4(g, pi)) == \
                count_pattern_brute(sigma, pi)


def test_d4_element_lookup():
    assert d4_element("rev").name == "rev"
    with pytest.raises(OutOfRangeError):
        d4_element("flip")


def test_random_permutation_is_seeded():
    a = random_permutation(20, random.Random(123))
    b = random_permutation(20, random.Random(123))
    assert a == b
    assert sorted(a) == list(range(1, 21))
