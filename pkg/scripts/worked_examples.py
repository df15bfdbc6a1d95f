#!/usr/bin/env python3
"""Walk through the worked examples: prime orders for the cubic and degree-10
fields, and the small ideal chains of the quartic fixture."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from idealorder.field_model import load_fixture
from idealorder.ideal_order import IdealContext, enumerate_norm, format_factorization, rank
from idealorder.padic_sort import digit_key, padic_factors, sort_factors
from idealorder.prime_order import PrimeIdeal, ideal_gen_valuation, sort_primes_above

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def show_cubic():
    fx = load_fixture(FIXTURES / "dedekind-cubic.json")
    K = fx.field
    print(f"== {K.label}: g = {K.poly}")
    factors = sort_factors(padic_factors(K, 2, 2, fx))
    print("2-adic factors at k=2, canonical order:")
    for h in factors:
        print(f"   {h.lift()}   digit key {digit_key(h).digits}")
    print("valuation matrix v((2^2, h_i(alpha))) rows per fixture prime:")
    for b in fx.primes[2]:
        P = PrimeIdeal(p=2, e=b.e, f=b.f, beta=b.beta, tau=b.tau)
        row = [ideal_gen_valuation(P, 2, h, K) for h in factors]
        print(f"   beta={b.beta}  row={tuple(row)}")
    for p in (2, 503):
        print(f"primes above {p}:")
        for lp in sort_primes_above(fx, p):
            print(f"   {lp.label}  e={lp.prime.e} f={lp.prime.f} beta={lp.prime.beta}")


def show_degree_ten():
    fx = load_fixture(FIXTURES / "degree-ten.json")
    K = fx.field
    print(f"\n== {K.label}")
    for k in (1, 2, 3):
        print(f"3-adic factors mod 3^{k}:")
        for h in sorted(padic_factors(K, 3, k, fx), key=lambda h: digit_key(h).digits):
            print(f"   {h.lift()}   key {digit_key(h).digits}")
    print("canonical primes above 3:")
    for lp in sort_primes_above(fx, 3):
        print(f"   {lp.label}  matched factor {lp.factor.lift()} (mod 27)")


def show_ideal_chains():
    fx = load_fixture(FIXTURES / "field-3-2.json")
    ctx = IdealContext(fx)
    print(f"\n== {fx.field.label}: ideal chains")
    for N in (18, 108):
        print(f"norm {N}:")
        for a in enumerate_norm(ctx, N):
            print(f"   {rank(ctx, a)} = {format_factorization(ctx, a)}")


if __name__ == "__main__":
    show_cubic()
    show_degree_ten()
    show_ideal_chains()
