"""Exact-rational algebra over formal sums of patterns and corner trees.

A corner-tree count is a linear combination of pattern counts; the expansion
here makes that combination explicit, so tree formulas can be solved for
target patterns, span dimensions computed, and the one missing direction of
the order-4 profile pinned down.  Everything in this module is exact: integer
rows with gcd normalization for elimination, fractions elsewhere, no floats.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from .errors import BasisMissingError, BoundExceededError
from .perms import apply_d4, count_pattern_brute, lex_patterns, pattern_of, pattern_str
from .trees import (
    DEFAULT_SIZE_BOUND,
    CornerTree,
    count_corner_tree,
    enumerate_corner_trees,
    parse_tree,
)


class PatternSum:
    """Sparse exact-rational combination of patterns, mixed sizes allowed.

    Zero coefficients are never stored; equality is coefficient-wise.

    >>> a = PatternSum({(1, 2): 1, (2, 1): Fraction(1, 2)})
    >>> b = PatternSum({(2, 1): Fraction(-1, 2)})
    >>> (a + b).terms
    {(1, 2): Fraction(1, 1)}
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for pat, coef in items:
            pat = tuple(pat)
            coef = clean.get(pat, 0) + Fraction(coef)
            if coef:
                clean[pat] = coef
            else:
                clean.pop(pat, None)
        self.terms = clean

    def coefficient(self, pat) -> Fraction:
        return self.terms.get(tuple(pat), Fraction(0))

    def support(self):
        """Patterns with nonzero coefficient, ordered by size then lex."""
        return sorted(self.terms, key=lambda p: (len(p), p))

    def restrict(self, k: int) -> "PatternSum":
        """Keep only the terms whose pattern has size exactly k."""
        return PatternSum({p: c for p, c in self.terms.items() if len(p) == k})

    def inner(self, other: "PatternSum") -> Fraction:
        """Inner product making single patterns orthonormal."""
        if len(other.terms) < len(self.terms):
            self, other = other, self
        return sum(
            (c * other.terms[p] for p, c in self.terms.items() if p in other.terms),
            Fraction(0),
        )

    def evaluate_brute(self, pi) -> Fraction:
        """Evaluate against brute-force pattern counts (test oracle path)."""
        return sum(
            (c * count_pattern_brute(p, pi) for p, c in self.terms.items()),
            Fraction(0),
        )

    def __add__(self, other):
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, 0) + c
        return PatternSum(merged)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return PatternSum({p: c * scalar for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PatternSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        body = ", ".join(
            "%s: %s" % (pattern_str(p), self.terms[p]) for p in self.support()
        )
        return "PatternSum({%s})" % body

    def to_json_dict(self) -> dict:
        out = {}
        for p in self.support():
            c = self.terms[p]
            out[pattern_str(p)] = int(c) if c.denominator == 1 else [c.numerator, c.denominator]
        return out


def d4_sum(g, ps: PatternSum) -> PatternSum:
    """Apply a D4 element to each pattern of a sum."""
    return PatternSum({apply_d4(g, p): c for p, c in ps.terms.items()})


class CornerTreeFormula:
    """Sparse exact-rational combination of canonical corner trees."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for t, coef in items:
            if not isinstance(t, CornerTree):
                t = parse_tree(t)
            coef = clean.get(t, 0) + Fraction(coef)
            if coef:
                clean[t] = coef
            else:
                clean.pop(t, None)
        self.terms = clean

    def trees(self):
        return sorted(self.terms, key=lambda t: (t.size, str(t)))

    def __add__(self, other):
        merged = dict(self.terms)
        for t, c in other.terms.items():
            merged[t] = merged.get(t, 0) + c
        return CornerTreeFormula(merged)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return CornerTreeFormula({t: c * scalar for t, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, CornerTreeFormula) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        body = ", ".join("%s: %s" % (t, self.terms[t]) for t in self.trees())
        return "CornerTreeFormula({%s})" % body

    def to_json_pairs(self) -> list:
        return [
            [str(t), [self.terms[t].numerator, self.terms[t].denominator]]
            for t in self.trees()
        ]

    @staticmethod
    def from_json_pairs(pairs) -> "CornerTreeFormula":
        return CornerTreeFormula(
            {parse_tree(note): Fraction(num, den) for note, (num, den) in pairs}
        )


@lru_cache(maxsize=None)
def _subpattern_profile(sigma) -> dict:
    """All proper subpatterns of sigma with multiplicity, sizes 1..|sigma|-1."""
    out = {}
    positions = range(len(sigma))
    for size in range(1, len(sigma)):
        for subset in combinations(positions, size):
            pat = pattern_of([sigma[i] for i in subset])
            out[pat] = out.get(pat, 0) + 1
    return out


@lru_cache(maxsize=None)
def _expand_tree_cached(t: CornerTree) -> tuple:
    coeffs = {}
    for size in range(1, t.size + 1):
        batch = {}
        for sigma in lex_patterns(size):
            direct = count_corner_tree(t, sigma)
            subs = _subpattern_profile(sigma)
            onto = direct - sum(w * subs.get(rho, 0) for rho, w in coeffs.items())
            if onto:
                batch[sigma] = onto
        coeffs.update(batch)
    return tuple(sorted(coeffs.items()))


def expand_tree(t: CornerTree, *, size_bound: int = DEFAULT_SIZE_BOUND) -> PatternSum:
    """Expand #T as an integer combination of plain pattern counts.

    The coefficient of sigma counts occurrences of T onto sigma, and is found
    by subtracting the contributions of all strictly smaller subpatterns from
    the plain tree count #T(sigma), size by size.
    """
    if t.size > size_bound:
        raise BoundExceededError(
            "tree has %d vertices, bound is %d; pass size_bound to raise it"
            % (t.size, size_bound)
        )
    return PatternSum(dict(_expand_tree_cached(t)))


def expand_formula(f: CornerTreeFormula, *, size_bound: int = DEFAULT_SIZE_BOUND) -> PatternSum:
    """Expansion of a tree formula: the matching combination of patterns."""
    out = PatternSum()
    for t, c in f.terms.items():
        out = out + c * expand_tree(t, size_bound=size_bound)
    return out


def evaluate_formula(f: CornerTreeFormula, pi, *, cost=None) -> Fraction:
    """Evaluate sum of c_T * #T(pi) with exact rational arithmetic."""
    total = Fraction(0)
    for t, c in f.terms.items():
        total += c * count_corner_tree(t, pi, cost=cost)
    return total


def builtin_formulas() -> dict:
    """The hard-coded tree formulas for 123, 213, 1234, 2134, 2143 and S."""
    half = Fraction(1, 2)
    f123 = CornerTreeFormula({"R(NE(NE))": 1})
    f213 = CornerTreeFormula({"R(NE(SW))": half, "R(NE(NE))": -1, "R(NE)": -half})
    f1234 = CornerTreeFormula({"R(NE(NE(NE)))": 1})
    f2134 = CornerTreeFormula(
        {"R(NE(NE(NE)))": -1, "R(NE(NE))": -half, "R(SW(SW,SW))": half}
    )
    f2143 = CornerTreeFormula(
        {
            "R(SW(SE),SE)": 1,
            "R(SE(SW),SE)": -1,
            "R(SE(NE),SE)": 1,
            "R(SW(SE(SE)))": -2,
            "R(SW(SE(SW)))": -2,
            "R(SW(SE))": -1,
            "R(NE,NE,NE)": Fraction(1, 3),
            "R(NE(NE,NE))": -1,
            "R(NE,NE)": -half,
            "R(NE)": Fraction(1, 6),
        }
    )
    fS = CornerTreeFormula(
        {
            "R(NE,NE,SE)": 2,
            "R(NE(SE(NE)))": 2,
            "R(NE,SE(NE))": -2,
            "R(NE,SE)": -1,
        }
    )
    return {
        "123": f123,
        "213": f213,
        "1234": f1234,
        "2134": f2134,
        "2143": f2143,
        "S": fS,
    }


# --- exact elimination over integer rows ---

def _normalize_int_row(row):
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for j, v in enumerate(row):
            row[j] = v // g
    for v in row:
        if v:
            if v < 0:
                for j, w in enumerate(row):
                    row[j] = -w
            break
    return row


class _IntEchelon:
    """Incremental row echelon over the integers, gcd-normalized.

    Rows are reduced against existing pivots in ascending column order and
    inserted if anything survives; pivot choice is therefore determined by
    the insertion order alone.  With keep_cols set, rows that vanish on the
    first keep_cols columns are discarded instead of stored: in a tagged
    elimination those rows only record linear dependencies among the inputs,
    and keeping them makes the tag-block coefficients blow up.
    """

    def __init__(self, width: int, keep_cols=None):
        self.width = width
        self.keep_cols = keep_cols
        self.rows = []
        self.pivots = []

    def reduce(self, row):
        for idx in range(len(self.pivots)):
            pc = self.pivots[idx]
            v = row[pc]
            if v:
                prow = self.rows[idx]
                pv = prow[pc]
                g = gcd(v, pv)
                a, b = pv // g, v // g
                # scale the whole row, not just the tail: columns left of pc
                # can be nonzero when no pivot sits there yet
                for j in range(pc):
                    row[j] = row[j] * a
                for j in range(pc, self.width):
                    row[j] = row[j] * a - prow[j] * b
        return _normalize_int_row(row)

    def insert(self, row) -> bool:
        row = self.reduce(list(row))
        for pc, v in enumerate(row):
            if v:
                if self.keep_cols is not None and pc >= self.keep_cols:
                    return False
                at = 0
                while at < len(self.pivots) and self.pivots[at] < pc:
                    at += 1
                self.pivots.insert(at, pc)
                self.rows.insert(at, row)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)

    def back_eliminate(self):
        """Full reduction: clear every pivot column above its pivot row."""
        for idx in range(len(self.pivots) - 1, -1, -1):
            pc = self.pivots[idx]
            prow = self.rows[idx]
            pv = prow[pc]
            for up in range(idx):
                row = self.rows[up]
                v = row[pc]
                if v:
                    g = gcd(v, pv)
                    a, b = pv // g, v // g
                    for j in range(self.width):
                        row[j] = row[j] * a - prow[j] * b
                    _normalize_int_row(row)


def _coordinates(k: int):
    cols = []
    for size in range(1, k + 1):
        cols.extend(lex_patterns(size))
    return cols, {p: i for i, p in enumerate(cols)}


def _tree_pool(k: int, which: str, size_bound: int):
    if k > size_bound:
        raise BoundExceededError(
            "span order %d exceeds bound %d; pass size_bound to raise it" % (k, size_bound)
        )
    if which == "exact":
        return list(enumerate_corner_trees(k, size_bound=size_bound))
    pool = []
    for size in range(1, k + 1):
        pool.extend(enumerate_corner_trees(size, size_bound=size_bound))
    return pool


def span_dimension(k: int, *, trees: str = "upto", size_bound: int = DEFAULT_SIZE_BOUND):
    """How much of the size-k pattern space corner-tree counts can see.

    Returns (dimension, basis) where the dimension is that of the
    restriction to size-k patterns of the span of the trees' expansions
    (all canonical trees with at most k vertices by default, exactly k with
    trees="exact"; the restriction does not depend on that choice).  In the
    tagged echelon the size-k coordinates come first, so rows whose pivot
    lands in that block count the restriction's rank; their tag parts name
    the basis formulas.  After back-elimination a basis formula's expansion
    has no smaller-pattern part whenever the full pool can cancel it: at
    k <= 4 that clears every row; at k = 5 size-4 remainders survive, since
    combinations expanding to size-5 patterns alone span one dimension less
    than the restriction.
    """
    pool = _tree_pool(k, trees, size_bound)
    cols_small, _ = _coordinates(k - 1) if k > 1 else ([], None)
    cols = list(lex_patterns(k)) + cols_small
    col_of = {p: i for i, p in enumerate(cols)}
    ncols = len(cols)
    kblock = len(cols) - len(cols_small)
    width = ncols + len(pool)
    ech = _IntEchelon(width, keep_cols=ncols)
    expansions = []
    for j, t in enumerate(pool):
        ps = expand_tree(t, size_bound=size_bound)
        expansions.append(ps)
        row = [0] * width
        for p, c in ps.terms.items():
            row[col_of[p]] = int(c)
        row[ncols + j] = 1
        ech.insert(row)
    ech.back_eliminate()

    basis = []
    for idx, pc in enumerate(ech.pivots):
        if pc < kblock:
            row = ech.rows[idx]
            formula = CornerTreeFormula(
                {pool[j]: row[ncols + j] for j in range(len(pool)) if row[ncols + j]}
            )
            basis.append(formula)
    dim = len(basis)

    # cross-check: rank of the size-k block computed over the transpose,
    # a genuinely different elimination order
    transpose = _IntEchelon(len(expansions))
    for col in range(kblock):
        transpose.insert([int(ps.coefficient(cols[col])) for ps in expansions])
    assert dim == transpose.rank, (dim, transpose.rank)
    return dim, basis


def solve_for_target(target: PatternSum, trees, *, size_bound: int = DEFAULT_SIZE_BOUND):
    """Exact-rational coefficients expressing target by the given trees.

    Returns a CornerTreeFormula whose expansion equals the target, or None
    when the target is outside the span.
    """
    trees = list(trees)
    if not target:
        return CornerTreeFormula()
    kmax = max(
        [len(p) for p in target.terms] + [t.size for t in trees] or [1]
    )
    cols, col_of = _coordinates(kmax)
    ncols = len(cols)
    width = ncols + len(trees)

    pivots = []
    rows = []
    for j, t in enumerate(trees):
        row = [Fraction(0)] * width
        for p, c in expand_tree(t, size_bound=size_bound).terms.items():
            row[col_of[p]] = Fraction(c)
        row[ncols + j] = Fraction(1)
        for idx, pc in enumerate(pivots):
            v = row[pc]
            if v:
                prow = rows[idx]
                factor = v / prow[pc]
                for col in range(pc, width):
                    row[col] -= factor * prow[col]
        for pc in range(ncols):
            if row[pc]:
                at = 0
                while at < len(pivots) and pivots[at] < pc:
                    at += 1
                pivots.insert(at, pc)
                rows.insert(at, row)
                break

    trow = [Fraction(0)] * width
    for p, c in target.terms.items():
        trow[col_of[p]] = Fraction(c)
    for idx, pc in enumerate(pivots):
        v = trow[pc]
        if v:
            prow = rows[idx]
            factor = v / prow[pc]
            for col in range(pc, width):
                trow[col] -= factor * prow[col]
    if any(trow[:ncols]):
        return None
    return CornerTreeFormula(
        {trees[j]: -trow[ncols + j] for j in range(len(trees)) if trow[ncols + j]}
    )


def orthogonal_complement_4() -> PatternSum:
    """The one direction of 4-pattern space that no tree formula reaches.

    Found as the integer nullspace of the size-4 projections of all tree
    expansions with at most four vertices, scaled so 1324 carries +1.
    """
    patterns4 = list(lex_patterns(4))
    col_of = {p: i for i, p in enumerate(patterns4)}
    ech = _IntEchelon(24)
    for t in _tree_pool(4, "upto", DEFAULT_SIZE_BOUND):
        row = [0] * 24
        for p, c in expand_tree(t).restrict(4).terms.items():
            row[col_of[p]] = int(c)
        ech.insert(row)
    assert ech.rank == 23, ech.rank
    ech.back_eliminate()
    free = next(c for c in range(24) if c not in ech.pivots)
    v = [Fraction(0)] * 24
    v[free] = Fraction(1)
    for idx, pc in enumerate(ech.pivots):
        row = ech.rows[idx]
        v[pc] = Fraction(-row[free], row[pc])
    result = PatternSum({patterns4[i]: v[i] for i in range(24)})
    scale = result.coefficient((1, 3, 2, 4))
    assert scale != 0
    return (1 / scale) * result


# --- the persisted order-4 basis artifact ---

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
_BASIS4_PATH = os.path.join(_DATA_DIR, "basis4.json")


def _basis4_payload() -> dict:
    dim, basis = span_dimension(4)
    assert dim == 23, dim
    rows = []
    for f in basis:
        exp = expand_formula(f)
        assert not any(len(p) != 4 for p in exp.terms), f
        row = {}
        for p, c in exp.terms.items():
            assert c.denominator == 1
            row[pattern_str(p)] = int(c)
        rows.append(row)
    return {
        "order": 4,
        "formulas": [f.to_json_pairs() for f in basis],
        "rows": rows,
    }


def _payload_hash(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def write_basis4(path: str = _BASIS4_PATH) -> str:
    """Regenerate the order-4 basis artifact; returns its content hash."""
    payload = _basis4_payload()
    document = dict(payload)
    document["hash"] = _payload_hash(payload)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(document, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return document["hash"]


def load_basis4(path: str = _BASIS4_PATH):
    """Load the persisted 23-formula basis; (formulas, rows) or an error.

    rows[i] maps each 4-pattern tuple to the integer coefficient of the i-th
    formula's expansion, the fixed left-hand side of the profile solve.
    """
    try:
        with open(path) as fh:
            document = json.load(fh)
    except (OSError, ValueError) as exc:
        raise BasisMissingError(
            "order-4 basis artifact unreadable at %s: %s; regenerate with "
            "write_basis4()" % (path, exc)
        )
    stored = document.pop("hash", None)
    if stored != _payload_hash(document):
        raise BasisMissingError(
            "order-4 basis artifact at %s fails its content hash; regenerate "
            "with write_basis4()" % path
        )
    formulas = [CornerTreeFormula.from_json_pairs(pairs) for pairs in document["formulas"]]
    rows = []
    for row in document["rows"]:
        rows.append({tuple(int(ch) for ch in pat): coef for pat, coef in row.items()})
    return formulas, rows
