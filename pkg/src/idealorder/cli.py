"""Command-line interface.

Verbs: primes, enumerate, label, unlabel, sort, validate, reduce-compare.
Fields come from a fixture file (--field) or an inline defining polynomial
(--poly, valid only while every requested p avoids disc(g)).  All output is
deterministic and newline-terminated; --format json mirrors the text content.

Exit codes: 0 success, 1 domain error, 2 usage error.
IDEALORDER_PRECISION_CAP overrides the precision-escalation cap (default 64).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import IdealOrderError, InvalidInputError
from .exact_arith import IntPoly, is_prime
from .field_model import (
    FieldFixture,
    NumberField,
    fixture_checks,
    load_fixture,
    reduced_poly_order,
)
from .ideal_order import (
    IdealContext,
    enumerate_norm,
    format_factorization,
    ideal_sort_key,
    parse_factorization,
    parse_label,
    rank,
    unrank,
)
from .prime_order import DEFAULT_K_MAX


def _precision_cap() -> int:
    raw = os.environ.get("IDEALORDER_PRECISION_CAP", "")
    if not raw:
        return DEFAULT_K_MAX
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidInputError(f"IDEALORDER_PRECISION_CAP={raw!r} is not an integer")
    if cap < 1:
        raise InvalidInputError("IDEALORDER_PRECISION_CAP must be >= 1")
    return cap


def _parse_poly(text: str) -> IntPoly:
    try:
        coeffs = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InvalidInputError(f"cannot parse polynomial coefficients from {text!r}")
    if not coeffs:
        raise InvalidInputError("empty polynomial")
    return IntPoly(coeffs)


def _context(args) -> IdealContext:
    if getattr(args, "field", None):
        fixture = load_fixture(args.field)
    else:
        poly = _parse_poly(args.poly)
        field = NumberField.create(poly)
        fixture = FieldFixture(field=field, primes={}, padic={})
    return IdealContext(fixture, k_max=_precision_cap())


def _emit(args, text_lines, payload):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# commands

def cmd_primes(args) -> int:
    ctx = _context(args)
    if args.p is not None:
        if not is_prime(args.p):
            raise _Usage(f"--p {args.p} is not prime")
        ps = [args.p]
    else:
        if args.max_norm < 1:
            raise _Usage("--max-norm must be >= 1")
        ps = [q for q in range(2, args.max_norm + 1) if is_prime(q)]
    rows = []

    def one(p):
        return [lp for lp in ctx.primes_above(p)
                if args.p is not None or lp.prime.norm <= args.max_norm]

    if args.jobs > 1 and len(ps) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            for chunk in pool.map(one, ps):
                rows.extend(chunk)
    else:
        for p in ps:
            rows.extend(one(p))
    rows.sort(key=lambda lp: (lp.label.norm, lp.label.index))
    lines = [
        f"{lp.label} p={lp.prime.p} e={lp.prime.e} f={lp.prime.f} beta={lp.prime.beta}"
        for lp in rows
    ]
    payload = {
        "command": "primes",
        "field": ctx.field.label,
        "primes": [
            {
                "label": str(lp.label),
                "p": lp.prime.p,
                "e": lp.prime.e,
                "f": lp.prime.f,
                "beta": [str(c) for c in lp.prime.beta.coords],
            }
            for lp in rows
        ],
    }
    _emit(args, lines, payload)
    return 0


def cmd_enumerate(args) -> int:
    ctx = _context(args)
    norms = [args.norm] if args.norm is not None else range(1, args.max_norm + 1)

    def fiber(N):
        return [(rank(ctx, a), format_factorization(ctx, a)) for a in enumerate_norm(ctx, N)]

    results = []
    if args.jobs > 1 and args.norm is None:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(fiber, norms))
    else:
        results = [fiber(N) for N in norms]
    lines = []
    ideals = []
    for chunk in results:
        for lbl, fact in chunk:
            lines.append(f"{lbl} = {fact}")
            ideals.append({"label": str(lbl), "factorization": fact})
    payload = {"command": "enumerate", "field": ctx.field.label, "ideals": ideals}
    _emit(args, lines, payload)
    return 0


def cmd_label(args) -> int:
    ctx = _context(args)
    ideal = parse_factorization(ctx, args.factorization)
    lbl = rank(ctx, ideal)
    _emit(args, [str(lbl)], {"command": "label", "label": str(lbl)})
    return 0


def cmd_unlabel(args) -> int:
    ctx = _context(args)
    ideal = unrank(ctx, parse_label(args.label))
    fact = format_factorization(ctx, ideal)
    _emit(args, [fact], {"command": "unlabel", "factorization": fact})
    return 0


def cmd_sort(args) -> int:
    ctx = _context(args)
    ideals = []
    for line in sys.stdin:
        line = line.strip()
        if line:
            ideals.append(parse_factorization(ctx, line))
    ideals.sort(key=lambda a: ideal_sort_key(ctx, a))
    lines = [format_factorization(ctx, a) for a in ideals]
    _emit(args, lines, {"command": "sort", "factorizations": lines})
    return 0


def cmd_validate(args) -> int:
    with open(args.field, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    lines = []
    checks = []
    failed = False
    for name, ok, detail in fixture_checks(doc):
        status = "PASS" if ok else "FAIL"
        failed = failed or not ok
        lines.append(f"{status} {name}" + (f": {detail}" if detail else ""))
        checks.append({"check": name, "ok": ok, "detail": detail})
    _emit(args, lines, {"command": "validate", "checks": checks})
    return 1 if failed else 0


def cmd_reduce_compare(args) -> int:
    with open(args.candidates, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise _Usage("candidates file must be a JSON array of coefficient arrays (constant term first)")
    cands = [IntPoly(row) for row in data]
    cap = args.precision_bits
    ordered = reduced_poly_order(cands, cap)
    lines = [f"selected: {ordered[0]}"]
    lines += [f"{i}: {P}" for i, P in enumerate(ordered, start=1)]
    payload = {
        "command": "reduce-compare",
        "selected": str(ordered[0]),
        "order": [str(P) for P in ordered],
    }
    _emit(args, lines, payload)
    return 0


class _Usage(Exception):
    pass


# ---------------------------------------------------------------------------

def _add_field_args(sp, poly_ok=True):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--field", help="fixture JSON file")
    if poly_ok:
        g.add_argument(
            "--poly",
            help="inline monic defining polynomial, coefficients constant-first "
                 "(self-contained mode: only primes away from disc(g))",
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="idealorder",
        description="Canonical ordering and N.i labelling of ideals of a number field",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("primes", help="list primes above p (or of norm <= bound)")
    _add_field_args(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=int, help="rational prime")
    g.add_argument("--max-norm", type=int, help="list all primes of norm <= N")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_primes)

    sp = sub.add_parser("enumerate", help="list ideals of a given norm in order")
    _add_field_args(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--norm", type=int)
    g.add_argument("--max-norm", type=int, help="all norms 1..M")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("label", help="factorization string -> label")
    _add_field_args(sp)
    sp.add_argument("--factorization", required=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_label)

    sp = sub.add_parser("unlabel", help="label -> factorization string")
    _add_field_args(sp)
    sp.add_argument("--label", required=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_unlabel)

    sp = sub.add_parser("sort", help="sort factorization strings from stdin")
    _add_field_args(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_sort)

    sp = sub.add_parser("validate", help="run fixture invariant checks")
    sp.add_argument("--field", required=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("reduce-compare", help="order defining-polynomial candidates")
    sp.add_argument("candidates", help="JSON file: array of coefficient arrays, constant term first")
    sp.add_argument("--precision-bits", type=int, default=4096)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_reduce_compare)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IdealOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
