"""Command line entry point.

Exit codes: 0 success or verified, 1 verification failed, 2 input error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .inference import METHODS, InvariantError, bayes_witness, infer
from .laws import run_laws
from .measure import MeasureError, format_rat
from .modelfile import InputError, dump_report, load_candidate, load_model

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


def cmd_infer(args) -> int:
    model = load_model(args.model)
    result = infer(model, args.method)
    text = dump_report(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _fmt_point(p) -> str:
    return "(" + ", ".join(map(str, p)) + ")" if isinstance(p, tuple) else str(p)


def cmd_verify(args) -> int:
    model = load_model(args.model)
    candidate = load_candidate(args.candidate, model)
    try:
        found = bayes_witness(model, candidate)
    except MeasureError as exc:
        raise InputError(str(exc), str(args.candidate)) from None
    if found is None:
        print("verified: candidate * P_Y reproduces the joint exactly")
        return EXIT_OK
    zeta, lhs, rhs = found
    members = ", ".join(_fmt_point(p) for p in zeta.sorted())
    print("Bayes equation fails")
    print(f"  witness event: {{{members}}}")
    print(f"  candidate * P_Y on event: {format_rat(lhs)}")
    print(f"  joint on event:           {format_rat(rhs)}")
    return EXIT_FAILED


def cmd_laws(args) -> int:
    summary = run_laws(args.seed, args.max_points, args.trials)
    return EXIT_OK if summary.ok else EXIT_FAILED


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="girybayes",
                                     description="Exact Bayesian inference maps on finite spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="construct inference maps for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--method", choices=METHODS, default="rn")
    p.add_argument("--out")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("verify", help="check a candidate kernel against Bayes equation")
    p.add_argument("--model", required=True)
    p.add_argument("--candidate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("laws", help="run randomized exact law checks")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-points", type=_positive, default=4)
    p.add_argument("--trials", type=_nonneg, default=200)
    p.set_defaults(func=cmd_laws)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
