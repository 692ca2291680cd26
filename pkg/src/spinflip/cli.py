"""Command line: ``spinflip analyze|sweep|stokes|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 numerical-validation error.
"""

import argparse
import sys

from .errors import ConvergenceError, DimensionError, DomainError, SpecParseError, ValidationError
from . import sweep as commands

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _columns(text):
    return [c.strip() for c in text.split(",") if c.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinflip",
        description="Entanglement S2, mixedness and spin-flip symmetry of n-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report all measures for one state")
    p.add_argument("spec", help="e.g. 'werner(w=0.5)'")
    p.add_argument("--out", help="also write a one-row CSV here")
    p.add_argument("--columns", type=_columns, help="comma-separated CSV columns")

    p = sub.add_parser("sweep", help="tabulate measures over one parameter range")
    p.add_argument("spec", help="e.g. 'werner(w=0:1:11)'")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--columns", type=_columns, help="comma-separated CSV columns")

    p = sub.add_parser("stokes", help="dump the Stokes tensor as index,value CSV")
    p.add_argument("spec")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("verify", help="check the exact identities and invariances on random states")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            sys.stdout.write(commands.cmd_analyze(args.spec, out=args.out, columns=args.columns))
        elif args.command == "sweep":
            csv = commands.cmd_sweep(args.spec, out=args.out, columns=args.columns)
            if args.out is None:
                sys.stdout.write(csv)
        elif args.command == "stokes":
            csv = commands.cmd_stokes(args.spec, out=args.out)
            if args.out is None:
                sys.stdout.write(csv)
        else:
            if args.trials < 1:
                raise SpecParseError(f"--trials must be >= 1, got {args.trials}")
            code, text = commands.cmd_verify(args.trials, args.nmax, args.seed, args.tol)
            sys.stdout.write(text)
            return code
    except (SpecParseError, DomainError, DimensionError) as exc:
        print(f"spinflip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ConvergenceError) as exc:
        print(f"spinflip: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"spinflip: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
