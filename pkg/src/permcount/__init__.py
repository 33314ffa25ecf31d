"""permcount: near-linear counting of small patterns in permutations.

Corner-tree formulas count the tree-expressible patterns in a single scan;
two strip algorithms cover the rest of the 4-patterns; on top sit exact 3-
and 4-profiles, Kendall's tau, and the quadruple-based independence
statistic t*.  A compiled kernel is used when the built extension is
importable, with a pure-Python twin behind the same interface.
"""

from .algebra import (
    CornerTreeFormula,
    PatternSum,
    builtin_formulas,
    d4_sum,
    evaluate_formula,
    expand_formula,
    expand_tree,
    load_basis4,
    orthogonal_complement_4,
    solve_for_target,
    span_dimension,
    write_basis4,
)
from .backend import active_backend, available_backends, set_backend
from .errors import (
    BasisMissingError,
    BoundExceededError,
    DuplicateValueError,
    IndexOutOfRangeError,
    InvalidRangeError,
    KTooLargeError,
    NTooSmallError,
    OutOfRangeError,
    PermcountError,
    TiesPresentError,
    TreeParseError,
    UnsupportedAlgorithmError,
)
from .perms import (
    D4_ELEMENTS,
    D4Element,
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
from .profiles import (
    count_3214_strips,
    count_3241_fast,
    count_pattern,
    profile3,
    profile4,
)
from .stats import (
    STABLE,
    STRICT,
    TStarResult,
    kendall_tau,
    load_bivariate_csv,
    rank_transform,
    tstar,
    tstar_pvalue,
)
from .sumtree import SumTree, SumTree2D
from .trees import (
    DEFAULT_SIZE_BOUND,
    CornerTree,
    TouchCounter,
    count_corner_tree,
    d4_tree,
    enumerate_corner_trees,
    format_tree,
    parse_tree,
    tree,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMissingError",
    "BoundExceededError",
    "CornerTree",
    "CornerTreeFormula",
    "D4Element",
    "D4_ELEMENTS",
    "DEFAULT_SIZE_BOUND",
    "DuplicateValueError",
    "IndexOutOfRangeError",
    "InvalidRangeError",
    "KTooLargeError",
    "NTooSmallError",
    "OutOfRangeError",
    "PatternSum",
    "PermcountError",
    "STABLE",
    "STRICT",
    "SumTree",
    "SumTree2D",
    "TStarResult",
    "TiesPresentError",
    "TouchCounter",
    "TreeParseError",
    "UnsupportedAlgorithmError",
    "active_backend",
    "apply_d4",
    "available_backends",
    "builtin_formulas",
    "count_3214_strips",
    "count_3241_fast",
    "count_corner_tree",
    "count_pattern",
    "count_pattern_brute",
    "d4_element",
    "d4_sum",
    "d4_tree",
    "enumerate_corner_trees",
    "evaluate_formula",
    "expand_formula",
    "expand_tree",
    "format_tree",
    "invert_perm",
    "k_profile_brute",
    "kendall_tau",
    "lex_patterns",
    "load_basis4",
    "load_bivariate_csv",
    "orthogonal_complement_4",
    "parse_pattern",
    "parse_permutation",
    "parse_tree",
    "pattern_index",
    "pattern_of",
    "pattern_str",
    "profile3",
    "profile4",
    "random_permutation",
    "rank_transform",
    "reverse_perm",
    "solve_for_target",
    "span_dimension",
    "tree",
    "tstar",
    "tstar_pvalue",
    "validate_permutation",
    "write_basis4",
]
