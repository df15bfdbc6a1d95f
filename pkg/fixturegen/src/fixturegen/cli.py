"""fixturegen command line.

    fixturegen <poly|label> --out <dir> [--max-norm N] [--prime-bound B]
    fixturegen check --fixtures <dir> --cli <path> --max-norm <N>

The first form emits a fixture JSON plus reference orderings (a
ReferenceBundle); the second runs the primary CLI against every bundle found
under --fixtures and reports mismatches.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generate import REFERENCE_MAX_NORM, REFERENCE_PRIME_BOUND, generate_bundle
from .crosscheck import check_all
from .localfield import CasError


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "check":
        ap = argparse.ArgumentParser(prog="fixturegen check")
        ap.add_argument("--fixtures", required=True)
        ap.add_argument("--cli", required=True, help="path to the idealorder executable")
        ap.add_argument("--max-norm", type=int, required=True)
        args = ap.parse_args(argv[1:])
        try:
            report = check_all(Path(args.fixtures), args.cli, args.max_norm)
        except RuntimeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(report.render())
        return 0 if report.ok else 1

    ap = argparse.ArgumentParser(prog="fixturegen")
    ap.add_argument("spec", help="defining polynomial (coefficients constant-first, "
                                 "or an expression in x) or a known field label")
    ap.add_argument("--out", required=True)
    ap.add_argument("--max-norm", type=int, default=REFERENCE_MAX_NORM)
    ap.add_argument("--prime-bound", type=int, default=REFERENCE_PRIME_BOUND)
    args = ap.parse_args(argv)
    try:
        stem = generate_bundle(args.spec, Path(args.out), args.max_norm, args.prime_bound)
    except CasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {stem}.json and references/{stem}/ under {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
