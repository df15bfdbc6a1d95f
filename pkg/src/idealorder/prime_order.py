"""Canonical total order and labels on prime ideals.

Primes are ordered by norm, then ramification index, then by the position of
their matched p-adic factor in the canonical factor order.  The matching uses
the valuations v((p^k, h(alpha))) = min(e*k, v(h(alpha))): at sufficient
precision the matched factor is the unique maximum of each prime's row.

When p does not divide disc(g) the Dedekind-Kummer correspondence gives the
same order directly from the mod-p factors, with generators (p, h_i(alpha)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    FixtureRequired,
    InvalidInputError,
    PrecisionExhausted,
    WrongPathError,
)
from .exact_arith import IntPoly, ModPoly, factor_mod_p, poly_gcd_mod_p
from .field_model import FieldElement, FieldFixture, NumberField
from .padic_sort import PadicFactorApprox, padic_factors, sort_factors, sorted_factors

DEFAULT_K_MAX = 64


@dataclass(frozen=True)
class PrimeLabel:
    norm: int
    index: int

    def __str__(self) -> str:
        return f"{self.norm}.{self.index}"


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime above p with its two-element generator (p, beta)."""

    p: int
    e: int
    f: int
    beta: FieldElement
    tau: FieldElement | None = None

    @property
    def norm(self) -> int:
        return self.p ** self.f


@dataclass(frozen=True)
class LabeledPrime:
    label: PrimeLabel
    prime: PrimeIdeal
    factor: PadicFactorApprox | None  # matched p-adic factor, if computed


# ---------------------------------------------------------------------------
# valuations

def valuation(x: FieldElement, P: PrimeIdeal, K: NumberField, max_m: int | None = None):
    """v_P(x); math.inf for x = 0.  Negative values are supported by scaling
    x into the p-integral range first."""
    if x.is_zero():
        return math.inf
    p = P.p
    t = max(_vp(c.denominator, p) for c in K.coords_in_integral_basis(x))
    y = K.scale(p ** t, x) if t else x
    shift = t * P.e
    if P.tau is not None:
        return _tau_valuation(y, P.tau, K, p, max_m, shift) - shift
    if K.disc_poly % p != 0:
        return _component_valuation(y, P, K) - shift
    raise FixtureRequired(p, "valuation needs tau when p divides disc(g)")


def _tau_valuation(y, tau, K, p, max_m, shift):
    limit = 4 * K.degree * 64 if max_m is None else max_m + shift + 1
    m = 0
    cur = y
    while m <= limit:
        nxt = K.mul(cur, tau)
        if not K.is_p_integral(nxt, p):
            return m
        cur = nxt
        m += 1
    if max_m is not None:
        return m  # caller only needs "at least this much"
    raise PrecisionExhausted(f"valuation exceeded {limit} at p={p}")


def _component_valuation(y, P, K):
    """Valuation inside the unramified component cut out by P's factor.

    Reduces the numerator polynomial of y modulo a lift of the factor at
    increasing precision; in an unramified local field the minimum coefficient
    valuation of the reduced representative is the element's valuation."""
    p = P.p
    hbar = recover_factor_from_generator(K, p, P.beta)
    if hbar.degree == K.degree and len(_mod_p_factors(K, p)) > 1:
        raise InvalidInputError("beta is a degenerate generator (divisible by p)")
    d = 1
    for c in y.coords:
        d = d * c.denominator // math.gcd(d, c.denominator)
    if d % p == 0:
        raise InvalidInputError("expected p-free denominators after scaling")
    b = IntPoly([int(c * d) for c in y.coords])
    S = 8
    while True:
        pk = p ** S
        h_lift = _factor_lift(K, p, S, hbar)
        rem = ModPoly(pk, b.coeffs).divmod(ModPoly(pk, h_lift.coeffs))[1]
        if rem.is_zero:
            S *= 2
            if S > 4096:
                raise PrecisionExhausted("component valuation did not stabilize")
            continue
        v = min(_vp(c, p) for c in rem.coeffs if c)
        if v < S - 1:
            return v
        S *= 2


def _mod_p_factors(K, p):
    return factor_mod_p(K.poly, p)


@lru_cache(maxsize=512)
def _padic_factors_cached(K, p, S):
    # only for p away from disc(g): no fixture data involved
    return tuple(padic_factors(K, p, S))


def _factor_lift(K, p, S, hbar: ModPoly) -> IntPoly:
    for h in _padic_factors_cached(K, p, S):
        if ModPoly(p, h.coeffs + (1,)) == hbar:
            return h.lift()
    raise InvalidInputError(f"no p-adic factor reduces to {hbar} mod {p}")


def ideal_gen_valuation(P: PrimeIdeal, k: int, h: PadicFactorApprox, K: NumberField) -> int:
    """v_P((p^k, h(alpha))) = min(e*k, v_P(h(alpha))), from the precision-k
    representative of h."""
    if h.k < k:
        raise InvalidInputError(f"factor precision {h.k} below requested k={k}")
    cap = P.e * k
    x = K.from_int_poly(h.reduce_to(k).lift())
    v = valuation(x, P, K, max_m=cap)
    return min(cap, v if v is not math.inf else cap)


def _vp(n: int, p: int) -> int:
    if n == 0:
        return 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# Dedekind-Kummer fast path

def recover_factor_from_generator(K: NumberField, p: int, beta: FieldElement) -> ModPoly:
    """h = gcd(g, b) in F_p[X] for beta = b(alpha).

    Valid whenever Z[alpha] is p-maximal: p not dividing disc(g), or, when the
    field discriminant is known, p appearing to the same power in disc(g) and
    in disc(K)."""
    if K.disc_poly % p == 0:
        p_maximal = (
            K.field_disc is not None
            and _vp(K.disc_poly, p) == _vp(K.field_disc, p)
        )
        if not p_maximal:
            raise WrongPathError(
                f"p={p} divides the index part of disc(g); "
                "recover the factor through the valuation route"
            )
    d = 1
    for c in beta.coords:
        d = d * c.denominator // math.gcd(d, c.denominator)
    if d % p == 0:
        raise InvalidInputError("beta must have p-integral power-basis coordinates")
    b = ModPoly(p, [int(c * d) % p for c in beta.coords])
    if b.is_zero:
        return K.poly.reduce_mod(p).monic()
    return poly_gcd_mod_p(K.poly.reduce_mod(p), b)


# ---------------------------------------------------------------------------
# matching and sorting

def match_primes_to_factors(primes, K: NumberField, p: int, fixture_data=None,
                            k_max: int = DEFAULT_K_MAX):
    """Bijection prime -> index into the canonically sorted factor list.

    Returns (sorted_factors, k, {prime_index: factor_index}).  Precision
    escalates until the factor order is strict and every prime's valuation row
    has a unique maximum.
    """
    n = K.degree
    if sum(P.e * P.f for P in primes) != n:
        raise InvalidInputError("primes do not account for the full degree")
    if len(primes) == 1:
        factors, k = sorted_factors(K, p, k_max=k_max, fixture_data=fixture_data)
        if len(factors) != 1:
            raise InvalidInputError("single prime but several p-adic factors")
        return factors, k, {0: 0}
    factors, k = sorted_factors(K, p, k_max=k_max, fixture_data=fixture_data)
    while True:
        mapping = {}
        ok = True
        for i, P in enumerate(primes):
            row = [ideal_gen_valuation(P, k, h, K) for h in factors]
            top = max(row)
            if row.count(top) != 1:
                ok = False
                break
            mapping[i] = row.index(top)
        if ok and len(set(mapping.values())) == len(primes):
            return factors, k, mapping
        if k >= k_max:
            raise PrecisionExhausted(
                f"no unique valuation maximum for p={p} at precision cap {k_max}"
            )
        k = min(2 * k, k_max)
        refreshed = padic_factors(K, p, k, fixture_data)
        factors = sort_factors(refreshed)


def sort_primes_above(fixture: FieldFixture, p: int, k_max: int = DEFAULT_K_MAX,
                      force_general: bool = False) -> list[LabeledPrime]:
    """Canonically ordered, labelled primes above p.

    Fixture blocks take the general (valuation-matching) route; without them,
    p must not divide disc(g) and the Dedekind-Kummer route applies.
    """
    K = fixture.field
    if p in fixture.primes:
        primes = [
            PrimeIdeal(p=b.p, e=b.e, f=b.f, beta=b.beta, tau=b.tau)
            for b in fixture.primes[p]
        ]
        return _sort_general(primes, K, p, fixture, k_max)
    if K.disc_poly % p != 0:
        if force_general:
            primes = _dedekind_kummer_primes(K, p)
            return _sort_general(primes, K, p, fixture, k_max)
        return _sort_dedekind_kummer(K, p)
    raise FixtureRequired(p, "p divides disc(g) and the fixture carries no prime block")


def _dedekind_kummer_primes(K, p):
    return [
        PrimeIdeal(p=p, e=1, f=h.degree, beta=K.from_int_poly(h.lift()), tau=None)
        for h, _ in factor_mod_p(K.poly, p)
    ]


def _sort_dedekind_kummer(K, p) -> list[LabeledPrime]:
    factors = factor_mod_p(K.poly, p)
    if any(m > 1 for _, m in factors):
        raise WrongPathError(f"p={p} divides disc(g)")
    # factor_mod_p already sorts by (degree, coefficient vector)
    ordered = [
        PrimeIdeal(p=p, e=1, f=h.degree, beta=K.from_int_poly(h.lift()), tau=None)
        for h, _ in factors
    ]
    approx = [
        PadicFactorApprox(p, 1, h.coeffs[:-1]) for h, _ in factors
    ]
    return _assign_labels(list(zip(ordered, approx)))


def _sort_general(primes, K, p, fixture, k_max) -> list[LabeledPrime]:
    factors, k, mapping = match_primes_to_factors(
        primes, K, p, fixture_data=fixture, k_max=k_max
    )
    keyed = sorted(
        (P.norm, P.e, mapping[i], i) for i, P in enumerate(primes)
    )
    return _assign_labels(
        [(primes[i], factors[pos]) for _, _, pos, i in keyed]
    )


def _assign_labels(ordered_pairs) -> list[LabeledPrime]:
    out = []
    counts: dict[int, int] = {}
    for prime, factor in ordered_pairs:
        counts[prime.norm] = counts.get(prime.norm, 0) + 1
        out.append(
            LabeledPrime(PrimeLabel(prime.norm, counts[prime.norm]), prime, factor)
        )
    return out
