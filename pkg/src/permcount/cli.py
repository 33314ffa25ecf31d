"""Command line interface.

Machine-readable results go to standard output (plain decimals or JSON,
depending on the command), diagnostics to standard error.  Exit codes:
0 success, 2 malformed input, 3 requested fast path unavailable, 4 tied
sample values under the strict tie policy.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .algebra import (
    PatternSum,
    expand_tree,
    solve_for_target,
    span_dimension,
)
from .errors import (
    BasisMissingError,
    BoundExceededError,
    PermcountError,
    TiesPresentError,
    UnsupportedAlgorithmError,
)
from .perms import (
    count_pattern_brute,
    parse_pattern,
    parse_permutation,
    pattern_str,
    random_permutation,
)
from .profiles import count_pattern, profile3, profile4
from .stats import (
    STABLE,
    STRICT,
    kendall_tau,
    load_bivariate_csv,
    rank_transform,
    tstar,
    tstar_pvalue,
)
from .trees import DEFAULT_SIZE_BOUND, enumerate_corner_trees, parse_tree


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1, got %d" % value)
    return value


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _frac(q: Fraction) -> str:
    return str(q)


def _perm_lines(args):
    """Permutations from the inline argument, --file, or standard input."""
    if getattr(args, "perm", None) is not None:
        yield parse_permutation(args.perm)
        return
    if getattr(args, "file", None):
        with open(args.file) as handle:
            for line in handle:
                if line.strip():
                    yield parse_permutation(line)
        return
    for line in sys.stdin:
        if line.strip():
            yield parse_permutation(line)


def _cmd_count(args) -> int:
    pattern = parse_pattern(args.pattern)
    algorithm = "brute" if args.brute else args.algorithm
    if len(pattern) >= 5 and algorithm == "auto":
        print(
            "note: no fast path for patterns of size %d; falling back to "
            "subset enumeration" % len(pattern),
            file=sys.stderr,
        )
    for pi in _perm_lines(args):
        value = count_pattern(pattern, pi, algorithm=algorithm, m=args.m)
        if args.self_check and len(pi) <= 30:
            expect = count_pattern_brute(pattern, pi)
            if expect != value:
                print(
                    "self-check failed on n=%d: fast path %d, enumeration %d"
                    % (len(pi), value, expect),
                    file=sys.stderr,
                )
                return 1
        if args.json:
            _print_json(
                {"pattern": pattern_str(pattern), "n": len(pi), "count": str(value)}
            )
        else:
            print(value)
    return 0


def _cmd_oracle(args) -> int:
    pattern = parse_pattern(args.pattern)
    for pi in _perm_lines(args):
        print(count_pattern_brute(pattern, pi))
    return 0


def _cmd_profile(args) -> int:
    for pi in _perm_lines(args):
        if args.k == 3:
            counts = profile3(pi)
        elif args.algorithm == "brute":
            counts = profile4(pi, method="brute")
        else:
            counts = profile4(pi, algorithm=args.algorithm, m=args.m)
        _print_json({pattern_str(p): str(c) for p, c in sorted(counts.items())})
    return 0


def _sample_source(args):
    """Bivariate samples: one from --csv, else one per input permutation."""
    if args.csv:
        yield load_bivariate_csv(args.csv, args.col_x, args.col_y)
        return
    for pi in _perm_lines(args):
        yield [(i, v) for i, v in enumerate(pi, start=1)]


def _cmd_tau(args) -> int:
    for sample in _sample_source(args):
        pi = rank_transform(sample, args.ties)
        tau = kendall_tau(pi)
        _print_json({"n": len(pi), "tau": _frac(tau), "tau_decimal": float(tau)})
    return 0


def _cmd_tstar(args) -> int:
    for sample in _sample_source(args):
        pi = rank_transform(sample, args.ties)
        result = tstar(pi)
        out = {
            "n": result.n,
            "tau": _frac(kendall_tau(pi)),
            "tstar_raw": str(result.raw),
            "tstar_normalized": _frac(result.normalized),
            "tstar_normalized_decimal": float(result.normalized),
        }
        if args.pvalue is not None:
            p = tstar_pvalue(sample, args.pvalue, seed=args.seed, ties=args.ties)
            out["pvalue"] = _frac(p)
            out["pvalue_decimal"] = float(p)
        _print_json(out)
    return 0


def _cmd_trees(args) -> int:
    found = enumerate_corner_trees(args.k, size_bound=args.bound)
    print("%d canonical trees with %d vertices" % (len(found), args.k), file=sys.stderr)
    _print_json([str(t) for t in found])
    return 0


def _cmd_span(args) -> int:
    dim, basis = span_dimension(args.k, trees=args.trees, size_bound=args.bound)
    if args.json:
        _print_json({"order": args.k, "dimension": dim, "basis_size": len(basis)})
    else:
        print(dim)
    return 0


def _cmd_expand(args) -> int:
    expansion = expand_tree(parse_tree(args.tree), size_bound=args.bound)
    _print_json(expansion.to_json_dict())
    return 0


def _cmd_solve(args) -> int:
    pattern = parse_pattern(args.pattern)
    pool = []
    for size in range(1, args.k + 1):
        pool.extend(enumerate_corner_trees(size, size_bound=args.bound))
    formula = solve_for_target(
        PatternSum({pattern: 1}), pool, size_bound=args.bound
    )
    if formula is None:
        _print_json({"pattern": pattern_str(pattern), "status": "NotInSpan"})
    else:
        _print_json(formula.to_json_pairs())
    return 0


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    for _ in range(args.count):
        pi = random_permutation(args.n, rng)
        print(" ".join(str(v) for v in pi))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permcount",
        description="Count small patterns in permutations in near-linear time.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument(
        "--threads",
        type=_positive_int,
        default=1,
        metavar="T",
        help="worker thread cap (reserved; evaluation is currently sequential)",
    )
    def add_source(p):
        p.add_argument("perm", nargs="?", help="permutation in one-line notation")
        p.add_argument("--file", help="read permutations from a file, one per line")

    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser(
        "count", parents=[common], help="count a pattern in permutations"
    )
    p.add_argument("pattern", help="pattern, e.g. 2143")
    add_source(p)
    p.add_argument(
        "--algorithm",
        choices=("auto", "tree", "3241", "3214", "profile", "brute"),
        default="auto",
        help="force a counting route (default: auto)",
    )
    p.add_argument("--brute", action="store_true", help="same as --algorithm brute")
    p.add_argument("--m", type=_positive_int, help="strip width override")
    p.add_argument("--self-check", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser(
        "oracle", parents=[common], help="count by subset enumeration"
    )
    p.add_argument("pattern", help="pattern, e.g. 2143")
    add_source(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser(
        "profile", parents=[common], help="full 3- or 4-profile as JSON"
    )
    p.add_argument("k", type=int, choices=(3, 4), help="profile order")
    add_source(p)
    p.add_argument(
        "--algorithm",
        choices=("3241", "3214", "brute"),
        default="3241",
        help="how to close the 4-profile system (default: 3241)",
    )
    p.add_argument("--m", type=_positive_int, help="strip width override")
    p.set_defaults(func=_cmd_profile)

    csvopts = argparse.ArgumentParser(add_help=False)
    csvopts.add_argument("--csv", help="read a bivariate sample from a CSV file")
    csvopts.add_argument("--col-x", type=_positive_int, default=1, metavar="I")
    csvopts.add_argument("--col-y", type=_positive_int, default=2, metavar="I")
    csvopts.add_argument(
        "--ties", choices=(STRICT, STABLE), default=STRICT, help="tie policy"
    )

    p = sub.add_parser(
        "tau", parents=[common, csvopts], help="Kendall's tau, exact"
    )
    add_source(p)
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser(
        "tstar",
        parents=[common, csvopts],
        help="the t* independence statistic, exact",
    )
    add_source(p)
    p.add_argument(
        "--pvalue",
        type=_positive_int,
        metavar="N",
        help="Monte-Carlo permutation test with N iterations",
    )
    p.add_argument("--seed", type=int, default=0, help="p-value reproducibility seed")
    p.set_defaults(func=_cmd_tstar)

    p = sub.add_parser("trees", parents=[common], help="list canonical corner trees")
    p.add_argument("k", type=_positive_int, help="number of vertices")
    p.add_argument("--bound", type=_positive_int, default=DEFAULT_SIZE_BOUND)
    p.set_defaults(func=_cmd_trees)

    p = sub.add_parser(
        "span", parents=[common], help="dimension spanned by tree expansions"
    )
    p.add_argument("k", type=_positive_int, help="pattern order")
    p.add_argument("--trees", choices=("upto", "exact"), default="upto")
    p.add_argument("--bound", type=_positive_int, default=DEFAULT_SIZE_BOUND)
    p.set_defaults(func=_cmd_span)

    p = sub.add_parser(
        "expand", parents=[common], help="pattern expansion of one corner tree"
    )
    p.add_argument("tree", help='tree notation, e.g. "R(NE(SW))"')
    p.add_argument("--bound", type=_positive_int, default=DEFAULT_SIZE_BOUND)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser(
        "solve", parents=[common], help="corner-tree formula for one pattern"
    )
    p.add_argument("pattern", help="pattern, e.g. 2143")
    p.add_argument("k", type=_positive_int, help="largest tree size to use")
    p.add_argument("--bound", type=_positive_int, default=DEFAULT_SIZE_BOUND)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser(
        "gen", parents=[common], help="seeded uniform random permutations"
    )
    p.add_argument("n", type=_positive_int, help="permutation order")
    p.add_argument("--count", type=_positive_int, default=1, help="how many")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    # an inline permutation may follow option flags; argparse's grouping
    # gives the optional positional away too eagerly, so reattach it
    args, extra = parser.parse_known_args(argv)
    if extra:
        vacant = getattr(args, "perm", "no slot") is None
        if not vacant or len(extra) != 1 or extra[0].startswith("-"):
            parser.error("unrecognized arguments: %s" % " ".join(extra))
        args.perm = extra[0]
    try:
        return args.func(args)
    except TiesPresentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    except (UnsupportedAlgorithmError, BoundExceededError, BasisMissingError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (PermcountError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
