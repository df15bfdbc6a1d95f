"""Kernel tests: discriminants, factorization over F_p, Hensel lifting, gcds."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from idealorder.errors import InvalidInputError, NotCoprimeError
from idealorder.exact_arith import (
    IntPoly,
    ModPoly,
    discriminant,
    factor_mod_p,
    factorize,
    hensel_lift,
    is_prime,
    poly_gcd_mod_p,
    resultant,
)

DEDEKIND = IntPoly([8, 2, -1, 1])  # X^3 - X^2 + 2X + 8
DEG10 = IntPoly([79, 111, -1631, 2343, 44, -1080, 242, 120, -35, -3, 1])

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def expand(factors, modulus):
    """Oracle: multiply out (factor, multiplicity) pairs mod the modulus."""
    acc = ModPoly(modulus, (1,))
    for f, m in factors:
        for _ in range(m):
            acc = acc * f
    return acc


class TestDiscriminant:
    def test_dedekind_cubic(self):
        assert discriminant(DEDEKIND) == -2012
        assert -2012 == -(2 ** 2) * 503

    def test_quadratic(self):
        assert discriminant(IntPoly([1, 0, 1])) == -4

    def test_degree_ten(self):
        assert discriminant(DEG10) == 3 ** 12 * 5 ** 5 * 41 ** 8 * 2141 ** 2 * 26641 ** 2

    def test_rejects_non_monic(self):
        with pytest.raises(InvalidInputError):
            discriminant(IntPoly([1, 2]).scale(2))
        with pytest.raises(InvalidInputError):
            discriminant(IntPoly([5]))

    def test_resultant_vs_eval(self):
        # Res(f, g) = prod g(roots of f) checked on a factored f
        f = IntPoly([-1, 0, 1])  # (X-1)(X+1)
        g = IntPoly([3, 1])
        assert resultant(f, g) == g.eval(1) * g.eval(-1)


class TestFactorModP:
    def test_dedekind_mod_2(self):
        got = factor_mod_p(DEDEKIND, 2)
        assert [(f.coeffs, m) for f, m in got] == [((0, 1), 2), ((1, 1), 1)]
        assert expand(got, 2) == DEDEKIND.reduce_mod(2)

    def test_x2_plus_1_mod_2(self):
        got = factor_mod_p(IntPoly([1, 0, 1]), 2)
        assert [(f.coeffs, m) for f, m in got] == [((1, 1), 2)]

    def test_dedekind_mod_503(self):
        # the 503-adic factors reduce to X+286 and (X+108)^2 mod 503
        assert 191929 % 503 == 286
        got = factor_mod_p(DEDEKIND, 503)
        assert [(f.coeffs, m) for f, m in got] == [((108, 1), 2), ((286, 1), 1)]
        assert expand(got, 503) == DEDEKIND.reduce_mod(503)

    def test_degree_ten_mod_3(self):
        got = factor_mod_p(DEG10, 3)
        assert [(f.coeffs, m) for f, m in got] == [
            ((1, 0, 1), 1),
            ((2, 1, 1), 2),
            ((2, 2, 1), 2),
        ]

    def test_rejects_composite_p(self):
        with pytest.raises(InvalidInputError):
            factor_mod_p(DEDEKIND, 4)

    def test_product_identity_and_irreducibility_500_random(self):
        # 500 random monic polynomials, degree <= 8, p <= 97
        rng = random.Random(20260810)
        for _ in range(500):
            p = rng.choice(SMALL_PRIMES)
            deg = rng.randrange(1, 9)
            f = IntPoly([rng.randrange(-50, 50) for _ in range(deg)] + [1])
            got = factor_mod_p(f, p)
            assert expand(got, p) == f.reduce_mod(p)
            for h, _ in got:
                assert _is_irreducible(h, p)

    def test_repeated_factor_iff_disc_divisible(self):
        rng = random.Random(7)
        for _ in range(200):
            p = rng.choice(SMALL_PRIMES)
            deg = rng.randrange(1, 7)
            f = IntPoly([rng.randrange(-20, 20) for _ in range(deg)] + [1])
            if f.degree < 1:
                continue
            repeated = any(m > 1 for _, m in factor_mod_p(f, p))
            if f.degree == 0:
                continue
            d = discriminant(f) if f.degree >= 1 else None
            if f.degree >= 1:
                assert (d % p == 0) == repeated, (f, p)


def _is_irreducible(h: ModPoly, p: int) -> bool:
    """Oracle: gcd filtration against X^(p^d) - X, independent of the factorizer."""
    d = h.degree
    if d == 0:
        return False
    x = ModPoly(p, (0, 1))
    # h divides X^(p^d) - X and shares no factor of lower filtration level
    frob = x
    for i in range(1, d + 1):
        frob = frob.pow_mod(p, h)
        g = poly_gcd_mod_p(h, frob - x) if not (frob - x).is_zero else h
        if i < d and g.degree > 0:
            return False
        if i == d and g != h.monic():
            return False
    return True


class TestHensel:
    def test_x2_minus_1_mod_9(self):
        got = hensel_lift(IntPoly([-1, 0, 1]), [ModPoly(3, (1, 1)), ModPoly(3, (2, 1))], 3, 2)
        assert sorted(h.coeffs for h in got) == [(1, 1), (8, 1)]
        assert all(h.modulus == 9 for h in got)

    def test_degree_ten_clusters_mod_27(self):
        parts = []
        for f, m in factor_mod_p(DEG10, 3):
            acc = ModPoly(3, (1,))
            for _ in range(m):
                acc = acc * f
            parts.append(acc)
        got = hensel_lift(DEG10, parts, 3, 3)
        prod = ModPoly(27, (1,))
        for h in got:
            prod = prod * h
        assert prod == DEG10.reduce_mod(27)
        for h, part in zip(got, parts):
            assert h.reduce_to(3) == part

    def test_not_coprime(self):
        with pytest.raises(NotCoprimeError):
            hensel_lift(DEDEKIND, [ModPoly(2, (0, 1)), ModPoly(2, (1, 1))], 2, 2)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5, 7, 13]), st.integers(2, 6))
    def test_random_split_lifts(self, seed, p, k):
        rng = random.Random(seed)
        deg = rng.randrange(2, 7)
        f = IntPoly([rng.randrange(-30, 30) for _ in range(deg)] + [1])
        fac = factor_mod_p(f, p)
        if any(m > 1 for _, m in fac) or len(fac) < 2:
            return
        parts = [h for h, _ in fac]
        got = hensel_lift(f, parts, p, k)
        prod = ModPoly(p ** k, (1,))
        for h in got:
            prod = prod * h
        assert prod == f.reduce_mod(p ** k)
        for h, part in zip(got, parts):
            assert h.reduce_to(p) == part
            assert h.is_monic


class TestGcdModP:
    def test_503_divisor_pair(self):
        # X+108 divides both X^2+216X+95 and itself mod 503
        a = ModPoly(503, (95, 216, 1))
        b = ModPoly(503, (108, 1))
        q, r = a.divmod(b)
        assert r.is_zero
        assert poly_gcd_mod_p(a, b).coeffs == (108, 1)

    def test_gcd_with_zero(self):
        f = ModPoly(7, (3, 2))
        assert poly_gcd_mod_p(f, ModPoly(7, ())) == f.monic()

    def test_distinct_linear(self):
        assert poly_gcd_mod_p(ModPoly(3, (1, 1)), ModPoly(3, (2, 1))).is_one

    def test_composite_modulus_rejected(self):
        with pytest.raises(InvalidInputError):
            poly_gcd_mod_p(ModPoly(6, (1, 1)), ModPoly(6, (2, 1)))


class TestIntegerHelpers:
    def test_is_prime_small(self):
        assert [n for n in range(2, 40) if is_prime(n)] == [
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37,
        ]
        assert is_prime(2 ** 61 - 1)
        assert not is_prime(2 ** 67 - 1)

    def test_factorize(self):
        assert factorize(1) == {}
        assert factorize(108) == {2: 2, 3: 3}
        assert factorize(2012) == {2: 2, 503: 1}
        n = 1000003 * 1000033
        assert factorize(n) == {1000003: 1, 1000033: 1}

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 10 ** 9))
    def test_factorize_roundtrip(self, n):
        out = factorize(n)
        prod = 1
        for q, e in out.items():
            assert is_prime(q)
            prod *= q ** e
        assert prod == n


class TestPurity:
    def test_factor_mod_p_deterministic(self):
        a = factor_mod_p(DEG10, 3)
        b = factor_mod_p(DEG10, 3)
        assert [(f.coeffs, m) for f, m in a] == [(f.coeffs, m) for f, m in b]
