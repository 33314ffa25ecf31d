"""Permutations in one-line notation, brute-force pattern counting, and the
symmetries of the permutation plot.

A permutation of order n is a tuple of the integers 1..n, each appearing once;
``pi[i]`` is the value at position i+1.  A *pattern* is just a short
permutation.  sigma occurs at positions i_1 < ... < i_k of pi when the values
``pi[i_1], ..., pi[i_k]`` are ordered the same way as sigma.

>>> count_pattern_brute((1, 3, 2), parse_permutation("2 3 6 4 7 5 1"))
7
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from typing import Iterable, Sequence

from .errors import DuplicateValueError, KTooLargeError, OutOfRangeError

Permutation = tuple  # one-line notation, values 1..n


def validate_permutation(values: Iterable[int]) -> Permutation:
    """Check that ``values`` lists 1..n exactly once and return it as a tuple.

    >>> validate_permutation([2, 1, 3])
    (2, 1, 3)
    >>> validate_permutation([2, 2, 3])
    Traceback (most recent call last):
        ...
    permcount.errors.DuplicateValueError: value 2 appears more than once
    """
    pi = tuple(values)
    n = len(pi)
    seen = [False] * (n + 1)
    for v in pi:
        if not isinstance(v, int) or isinstance(v, bool):
            raise OutOfRangeError("permutation entries must be integers, got %r" % (v,))
        if not 1 <= v <= n:
            raise OutOfRangeError("value %d out of range 1..%d" % (v, n))
        if seen[v]:
            raise DuplicateValueError("value %d appears more than once" % v)
        seen[v] = True
    return pi


def parse_permutation(text: str) -> Permutation:
    """Parse one-line notation with whitespace or comma separated values.

    >>> parse_permutation("2,3,6,4,7,5,1")
    (2, 3, 6, 4, 7, 5, 1)
    """
    tokens = text.replace(",", " ").split()
    values = []
    for tok in tokens:
        try:
            values.append(int(tok))
        except ValueError:
            raise OutOfRangeError("not an integer: %r" % tok) from None
    return validate_permutation(values)


def parse_pattern(text: str) -> Permutation:
    """Parse a pattern given either as digits ("2143") or one-line notation.

    >>> parse_pattern("2143")
    (2, 1, 4, 3)
    >>> parse_pattern("10 2 ...")  # doctest: +SKIP
    """
    text = text.strip()
    if text and " " not in text and "," not in text and text.isdigit() and len(text) > 1:
        return validate_permutation(int(ch) for ch in text)
    return parse_permutation(text)


def pattern_str(sigma: Sequence[int]) -> str:
    """Render a short pattern as digits: (2, 1, 4, 3) -> "2143"."""
    if any(v > 9 for v in sigma):
        return " ".join(str(v) for v in sigma)
    return "".join(str(v) for v in sigma)


def random_permutation(n: int, rng: random.Random) -> Permutation:
    """Uniform random permutation of order n (Fisher-Yates via rng.shuffle)."""
    values = list(range(1, n + 1))
    rng.shuffle(values)
    return tuple(values)


def pattern_of(values: Sequence[int]) -> Permutation:
    """The pattern (relative order) of a sequence of distinct numbers.

    >>> pattern_of((6, 4, 7))
    (2, 1, 3)
    """
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(ranks[v] for v in values)


def lex_patterns(k: int) -> list[Permutation]:
    """All k! patterns of order k in lexicographic order."""
    return [tuple(p) for p in itertools.permutations(range(1, k + 1))]


def pattern_index(sigma: Sequence[int]) -> int:
    """Lexicographic index of sigma within the k! patterns of its order."""
    sigma = tuple(sigma)
    k = len(sigma)
    remaining = sorted(sigma)
    index = 0
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    for v in sigma:
        fact //= len(remaining)
        index += remaining.index(v) * fact
        remaining.remove(v)
    return index


def count_pattern_brute(sigma: Sequence[int], pi: Sequence[int]) -> int:
    """Count occurrences of sigma in pi by enumerating all position subsets.

    Exponential in len(sigma); this is the reference oracle the fast paths are
    tested against.  The empty pattern occurs exactly once.

    >>> count_pattern_brute((1, 2), (2, 4, 1, 3))
    3
    >>> count_pattern_brute((), (2, 1))
    1
    """
    sigma = tuple(sigma)
    k = len(sigma)
    if k == 0:
        return 1
    if k > len(pi):
        return 0
    count = 0
    for combo in itertools.combinations(pi, k):
        if pattern_of(combo) == sigma:
            count += 1
    return count


def k_profile_brute(pi: Sequence[int], k: int) -> list[int]:
    """The k-profile of pi: counts of all k! patterns, lexicographic order.

    The entries sum to C(n, k).

    >>> k_profile_brute((1, 2, 3), 2)
    [3, 0]
    """
    if k < 1:
        raise KTooLargeError("profile order must be >= 1, got %d" % k)
    n = len(pi)
    if k > n:
        raise KTooLargeError("profile order %d exceeds permutation order %d" % (k, n))
    counts: Counter = Counter()
    for combo in itertools.combinations(pi, k):
        counts[pattern_of(combo)] += 1
    return [counts.get(sigma, 0) for sigma in lex_patterns(k)]


def reverse_perm(pi: Permutation) -> Permutation:
    """Reverse the positions: rev(pi)(i) = pi(n+1-i)."""
    return tuple(reversed(pi))


def invert_perm(pi: Permutation) -> Permutation:
    """The inverse permutation (reflect the plot across the main diagonal)."""
    inv = [0] * len(pi)
    for i, v in enumerate(pi):
        inv[v - 1] = i + 1
    return tuple(inv)


# --- the eight symmetries of the plot, generated by rev and inv ---

CORNER_LABELS = ("SW", "SE", "NW", "NE")

_REV_LABEL = {"SW": "SE", "SE": "SW", "NW": "NE", "NE": "NW"}
_INV_LABEL = {"SW": "SW", "NE": "NE", "NW": "SE", "SE": "NW"}


class D4Element:
    """One of the eight symmetries, stored as a word in the generators.

    The word composes left to right as function composition: ("rev", "inv")
    acts by pi -> rev(inv(pi)).  Each symmetry also permutes the four corner
    directions; that permutation identifies the element uniquely and is what
    the corner-tree relabeling uses.
    """

    __slots__ = ("name", "word", "label_map")

    def __init__(self, name: str, word: tuple):
        self.name = name
        self.word = word
        mapping = {lab: lab for lab in CORNER_LABELS}
        for gen in reversed(word):
            step = _REV_LABEL if gen == "rev" else _INV_LABEL
            mapping = {lab: step[img] for lab, img in mapping.items()}
        self.label_map = mapping

    def _key(self) -> tuple:
        return tuple(self.label_map[lab] for lab in CORNER_LABELS)

    def __repr__(self):
        return "D4Element(%r)" % self.name

    def __eq__(self, other):
        return isinstance(other, D4Element) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def inverse(self) -> "D4Element":
        return _element_from_word(tuple(reversed(self.word)))

    def compose(self, other: "D4Element") -> "D4Element":
        """self o other: first apply other, then self."""
        return _element_from_word(self.word + other.word)


_WORDS = (
    ("id", ()),
    ("rev", ("rev",)),
    ("inv", ("inv",)),
    ("rev.inv", ("rev", "inv")),
    ("inv.rev", ("inv", "rev")),
    ("rev.inv.rev", ("rev", "inv", "rev")),
    ("inv.rev.inv", ("inv", "rev", "inv")),
    ("rev.inv.rev.inv", ("rev", "inv", "rev", "inv")),
)

D4_ELEMENTS = tuple(D4Element(name, word) for name, word in _WORDS)

_BY_KEY = {g._key(): g for g in D4_ELEMENTS}
_BY_NAME = {g.name: g for g in D4_ELEMENTS}


def _element_from_word(word: tuple) -> D4Element:
    probe = D4Element("?", word)
    return _BY_KEY[probe._key()]


def d4_element(name: str) -> D4Element:
    """Look up a symmetry by name ("id", "rev", "inv", "rev.inv", ...)."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise OutOfRangeError("unknown symmetry %r" % name) from None


def apply_d4(g: D4Element, pi: Permutation) -> Permutation:
    """Act on a permutation (or pattern): the word applied right to left."""
    for gen in reversed(g.word):
        pi = reverse_perm(pi) if gen == "rev" else invert_perm(pi)
    return pi
