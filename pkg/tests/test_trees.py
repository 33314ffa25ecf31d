"""Corner trees: construction, enumeration, and the counting scan."""

import random

import pytest

from permcount.errors import BoundExceededError, TreeParseError
from permcount.perms import (
    D4_ELEMENTS,
    apply_d4,
    count_pattern_brute,
    random_permutation,
)
from permcount.trees import (
    CornerTree,
    TouchCounter,
    count_corner_tree,
    canonical_encode,
    d4_tree,
    enumerate_corner_trees,
    format_tree,
    parse_tree,
    tree,
)

from oracles import brute_tree_occurrences


def test_children_are_canonically_ordered():
    a = tree("R", tree("SE"), tree("NE", tree("SW")))
    b = tree("R", tree("NE", tree("SW")), tree("SE"))
    assert a == b
    assert str(a) == str(b) == "R(NE(SW),SE)"
    assert canonical_encode(a) == canonical_encode(b)
    assert hash(a) == hash(b)


def test_parse_round_trip():
    for text in ("R", "R(NE)", "R(NE(SW),SE)", "R(NE,NE,SE)", "R(NW(NE(SE)))"):
        t = parse_tree(text)
        assert format_tree(t) == text
        assert parse_tree(format_tree(t)) == t
    # whitespace and child order are normalized away
    assert str(parse_tree(" R( SE , NE(SW) ) ")) == "R(NE(SW),SE)"


def test_parse_rejects_malformed_input():
    for bad in ("", "  ", "NE", "R(", "R(NE", "R(NE))", "R(XX)", "R(NE)Q", "R()"):
        with pytest.raises(TreeParseError):
            parse_tree(bad)
    with pytest.raises(TreeParseError):
        CornerTree("Q")
    with pytest.raises(TreeParseError):
        # the root label cannot appear below the top
        CornerTree("R", (CornerTree("R"),))


def test_enumeration_counts():
    assert [len(enumerate_corner_trees(k)) for k in range(1, 5)] == [1, 4, 26, 188]


def test_enumeration_is_duplicate_free():
    for k in (3, 4, 5):
        pool = enumerate_corner_trees(k)
        assert len({str(t) for t in pool}) == len(pool)
        assert all(t.size == k for t in pool)
        assert all(t.label == "R" for t in pool)


def test_enumeration_bound():
    with pytest.raises(BoundExceededError):
        enumerate_corner_trees(8)
    with pytest.raises(BoundExceededError):
        enumerate_corner_trees(3, size_bound=2)
    assert len(enumerate_corner_trees(3, size_bound=3)) == 26
    with pytest.raises(TreeParseError):
        enumerate_corner_trees(0)


def test_count_requires_rooted_tree():
    with pytest.raises(TreeParseError):
        count_corner_tree(CornerTree("NE"), (1, 2, 3))


def test_single_vertex_and_known_counts():
    assert count_corner_tree(parse_tree("R"), (2, 1, 3)) == 3
    assert count_corner_tree(parse_tree("R(NE)"), (2, 4, 1, 3)) == 3
    # on a monotone run every pair is an ascent
    assert count_corner_tree(parse_tree("R(NE)"), tuple(range(1, 9))) == 28


def test_ne_chain_counts_increasing_pattern():
    # strict inequalities down an NE chain force distinct positions, so the
    # chain of k vertices counts the increasing pattern of size k exactly
    rng = random.Random(0xC0FFEE)
    for k in range(2, 6):
        spec = "R" + "(NE" * (k - 1) + ")" * (k - 1)
        t = parse_tree(spec)
        for _ in range(6):
            n = rng.randint(k, 14)
            pi = random_permutation(n, rng)
            assert count_corner_tree(t, pi) == count_pattern_brute(
                tuple(range(1, k + 1)), pi
            )


def test_scan_matches_brute_occurrences():
    rng = random.Random(1789)
    pool = enumerate_corner_trees(2) + enumerate_corner_trees(3)
    for trial in range(40):
        t = pool[rng.randrange(len(pool))]
        n = rng.randint(1, 9)
        pi = random_permutation(n, rng)
        assert count_corner_tree(t, pi) == brute_tree_occurrences(t, pi), (str(t), pi)


def test_scan_matches_brute_on_size4_sample():
    rng = random.Random(41)
    pool = enumerate_corner_trees(4)
    for t in rng.sample(pool, 25):
        pi = random_permutation(rng.randint(4, 8), rng)
        assert count_corner_tree(t, pi) == brute_tree_occurrences(t, pi), str(t)


def test_d4_equivariance():
    rng = random.Random(97)
    pool = enumerate_corner_trees(3)
    for trial in range(20):
        t = pool[rng.randrange(len(pool))]
        pi = random_permutation(rng.randint(2, 10), rng)
        for g in D4_ELEMENTS:
            assert count_corner_tree(d4_tree(g, t), apply_d4(g, pi)) == count_corner_tree(t, pi)


def test_d4_tree_fixes_root_and_maps_labels():
    t = parse_tree("R(NE(SW),SE)")
    for g in D4_ELEMENTS:
        image = d4_tree(g, t)
        assert image.label == "R"
        assert image.size == t.size
    rev = next(g for g in D4_ELEMENTS if g.name == "rev")
    assert str(d4_tree(rev, parse_tree("R(NE)"))) == "R(NW)"


def test_touch_accounting_is_exact():
    # every non-root vertex scans all n positions, paying one query (depth)
    # and one insert (depth + 1) per position
    rng = random.Random(5150)
    for spec in ("R(NE)", "R(NE(NE))", "R(SE(NE),NW)", "R(NE,SE,SW)"):
        t = parse_tree(spec)
        for n in (2, 5, 16, 33, 100):
            pi = random_permutation(n, rng)
            cost = TouchCounter()
            count_corner_tree(t, pi, cost=cost)
            depth = (n - 1).bit_length()
            assert cost.total == (t.size - 1) * n * (2 * depth + 1)


def test_touch_counter_accumulates():
    pi = (2, 4, 1, 3)
    cost = TouchCounter()
    count_corner_tree(parse_tree("R(NE)"), pi, cost=cost)
    once = cost.total
    count_corner_tree(parse_tree("R(NE)"), pi, cost=cost)
    assert cost.total == 2 * once
    assert "TouchCounter" in repr(cost)
