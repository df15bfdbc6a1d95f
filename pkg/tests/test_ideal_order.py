"""Ideal ordering: 3.1/3.2 chains, rank/unrank, counting, monoid law, grammar."""

import random

import pytest

from idealorder.errors import InvalidInputError, NoSuchIdealError
from idealorder.ideal_order import (
    IdealContext,
    SplittingProfile,
    _prime_power_key,
    _vectors_with_norm,
    cmp_ideals,
    cmp_prime_power,
    count_norm,
    enumerate_norm,
    format_factorization,
    multiply,
    parse_factorization,
    parse_label,
    rank,
    unrank,
    weight,
)

SYNTH = SplittingProfile(2, ((1, 1), (1, 1), (1, 1), (1, 2)))  # three degree-1 primes and one degree-2


def ordered_vectors(profile, n):
    vecs = _vectors_with_norm(profile.fvec, n)
    vecs.sort(key=lambda v: _prime_power_key(v, profile))
    return vecs


class TestPrimePowerChains:
    def test_weight(self):
        assert weight((2, 0, 0, 0)) == 2
        assert weight((0, 0, 0, 1)) == 1
        assert weight((0, 0, 0, 0)) == 0

    def test_norm_p_chain(self):
        assert ordered_vectors(SYNTH, 1) == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]

    def test_norm_p2_chain(self):
        assert ordered_vectors(SYNTH, 2) == [
            (0, 0, 0, 1),
            (2, 0, 0, 0),
            (1, 1, 0, 0),
            (1, 0, 1, 0),
            (0, 2, 0, 0),
            (0, 1, 1, 0),
            (0, 0, 2, 0),
        ]

    def test_norm_p3_chain(self):
        assert ordered_vectors(SYNTH, 3) == [
            (1, 0, 0, 1),
            (0, 1, 0, 1),
            (0, 0, 1, 1),
            (3, 0, 0, 0),
            (2, 1, 0, 0),
            (2, 0, 1, 0),
            (1, 2, 0, 0),
            (1, 1, 1, 0),
            (1, 0, 2, 0),
            (0, 3, 0, 0),
            (0, 2, 1, 0),
            (0, 1, 2, 0),
            (0, 0, 3, 0),
        ]
        assert len(ordered_vectors(SYNTH, 3)) == 13

    def test_cmp_prime_power_requires_same_p(self, quartic):
        ctx = IdealContext(quartic)
        a = ctx.prime_ideal(2, 0)
        b = ctx.prime_ideal(3, 0)
        with pytest.raises(InvalidInputError):
            cmp_prime_power(ctx, a, b)


class TestSection32:
    def test_norm_18(self, quartic):
        ctx = IdealContext(quartic)
        got = [format_factorization(ctx, a) for a in enumerate_norm(ctx, 18)]
        assert got == ["2.1*3.1^2", "2.2*3.1^2"]

    def test_norm_108_chain(self, quartic):
        ctx = IdealContext(quartic)
        got = [format_factorization(ctx, a) for a in enumerate_norm(ctx, 108)]
        assert got == [
            "4.1*27.1",
            "3.1^3*4.1",
            "2.1^2*27.1",
            "2.1^2*3.1^3",
            "2.1*2.2*27.1",
            "2.1*2.2*3.1^3",
            "2.2^2*27.1",
            "2.2^2*3.1^3",
        ]

    def test_rank_108_4(self, quartic):
        ctx = IdealContext(quartic)
        a = parse_factorization(ctx, "2.1^2*3.1^3")
        assert str(rank(ctx, a)) == "108.4"

    def test_unrank_examples(self, quartic):
        ctx = IdealContext(quartic)
        assert format_factorization(ctx, unrank(ctx, parse_label("18.2"))) == "2.2*3.1^2"
        assert format_factorization(ctx, unrank(ctx, parse_label("108.1"))) == "4.1*27.1"

    def test_out_of_range(self, quartic):
        ctx = IdealContext(quartic)
        with pytest.raises(NoSuchIdealError) as exc:
            unrank(ctx, parse_label("108.9"))
        assert exc.value.count == 8

    def test_empty_fiber(self, quartic):
        # 7 is inert in neither... pick a prime with no degree-1 factor: norm 5?
        ctx = IdealContext(quartic)
        # g mod 5: check a norm that no ideal attains
        for N in (5, 7, 11):
            fiber = enumerate_norm(ctx, N)
            assert fiber == [] or all(a.norm == N for a in fiber)

    def test_unrank_9_3_degree_ten(self, degree_ten):
        # third prime above 3 is p_a (matched to h5)
        ctx = IdealContext(degree_ten)
        a = unrank(ctx, parse_label("9.3"))
        assert weight(a.components[0][1]) == 1
        pos = a.components[0][1].index(1)
        assert ctx.primes_above(3)[pos].label.index == 3


class TestRankUnrank:
    def test_roundtrip_small_norms(self, all_fixtures):
        for fx in all_fixtures.values():
            ctx = IdealContext(fx)
            for N in range(1, 200):
                for i, a in enumerate(enumerate_norm(ctx, N), start=1):
                    lbl = rank(ctx, a)
                    assert (lbl.norm, lbl.index) == (N, i), (fx.field.label, N, i)
                    assert unrank(ctx, lbl) == a

    def test_rank_matches_enumeration_position(self, quartic):
        ctx = IdealContext(quartic)
        for N in (4, 8, 16, 18, 27, 36, 54, 104, 108, 126):
            fiber = enumerate_norm(ctx, N)
            for i, a in enumerate(fiber, start=1):
                assert rank(ctx, a).index == i

    def test_unit_ideal(self, gaussian):
        ctx = IdealContext(gaussian)
        one = ctx.unit_ideal()
        assert str(rank(ctx, one)) == "1.1"
        assert unrank(ctx, parse_label("1.1")) == one
        assert count_norm(ctx, 1) == 1


class TestCounting:
    def test_synthetic_13(self):
        from idealorder.ideal_order import _ComponentDP

        dp = _ComponentDP(SYNTH.fvec)
        assert dp.count(3) == 13
        assert dp.count(2) == 7
        assert dp.count(1) == 3

    def test_count_matches_enumeration(self, all_fixtures):
        for fx in all_fixtures.values():
            ctx = IdealContext(fx)
            for N in range(1, 150):
                assert count_norm(ctx, N) == len(enumerate_norm(ctx, N)), (fx.field.label, N)

    def test_gaussian_character_sum(self, gaussian):
        ctx = IdealContext(gaussian)
        for N in range(1, 400):
            chi = sum(
                1 if d % 4 == 1 else -1 if d % 4 == 3 else 0
                for d in range(1, N + 1)
                if N % d == 0
            )
            assert count_norm(ctx, N) == chi, N


class TestMonoid:
    def test_multiply_basic(self, quartic):
        ctx = IdealContext(quartic)
        p1 = ctx.prime_ideal(2, 0)
        sq = multiply(ctx, p1, p1)
        assert sq.exponents(2) == (2, 0, 0)
        assert multiply(ctx, p1, ctx.unit_ideal()) == p1
        q1 = ctx.prime_ideal(3, 0)
        mixed = multiply(ctx, multiply(ctx, p1, q1), q1)
        assert mixed.exponents(3) == (2, 0)
        assert mixed.norm == 2 * 9

    def test_order_is_translation_invariant(self, quartic):
        ctx = IdealContext(quartic)
        rng = random.Random(42)
        pool = _random_ideals(ctx, rng, 60, max_norm=1000)
        checked = 0
        while checked < 500:
            a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            if cmp_ideals(ctx, a, b) < 0:
                assert cmp_ideals(ctx, multiply(ctx, a, c), multiply(ctx, b, c)) < 0
                checked += 1

    def test_total_order_axioms(self, quartic):
        ctx = IdealContext(quartic)
        rng = random.Random(17)
        pool = _random_ideals(ctx, rng, 40, max_norm=800)
        for _ in range(300):
            a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            ab, ba = cmp_ideals(ctx, a, b), cmp_ideals(ctx, b, a)
            assert ab == -ba
            assert (ab == 0) == (a == b)
            if ab <= 0 and cmp_ideals(ctx, b, c) <= 0:
                assert cmp_ideals(ctx, a, c) <= 0


def _random_ideals(ctx, rng, count, max_norm):
    out = []
    small_ps = [2, 3, 5, 7]
    while len(out) < count:
        exps = {}
        for p in rng.sample(small_ps, rng.randrange(1, 3)):
            r = len(ctx.profile(p).ef)
            exps[p] = tuple(rng.randrange(0, 3) for _ in range(r))
        a = ctx.make_ideal(exps)
        if 1 <= a.norm <= max_norm:
            out.append(a)
    return out


class TestPrimesFirst:
    def test_primes_initial_segment(self, all_fixtures):
        for fx in all_fixtures.values():
            ctx = IdealContext(fx)
            for p in [2, 3, 5, 7] + sorted(fx.primes):
                for lp in ctx.primes_above(p):
                    lbl = rank(ctx, ctx.prime_ideal(p, _position(ctx, p, lp)))
                    assert (lbl.norm, lbl.index) == (lp.label.norm, lp.label.index)

    def test_weight_one_first(self, quartic):
        ctx = IdealContext(quartic)
        for N in (2, 3, 4, 8, 9, 27, 16):
            fiber = enumerate_norm(ctx, N)
            weights = [sum(sum(v) for _, v in a.components) for a in fiber]
            assert weights == sorted(weights) or all(
                w1 <= w2 for w1, w2 in zip(weights, weights[1:])
            )


def _position(ctx, p, lp):
    return ctx.primes_above(p).index(lp)


class TestFactorizationStrings:
    def test_roundtrip(self, quartic):
        ctx = IdealContext(quartic)
        for N in (18, 108, 36, 48):
            for a in enumerate_norm(ctx, N):
                s = format_factorization(ctx, a)
                assert parse_factorization(ctx, s) == a

    def test_exponent_one_omitted(self, quartic):
        ctx = IdealContext(quartic)
        a = ctx.prime_ideal(2, 0)
        assert format_factorization(ctx, a) == "2.1"

    def test_ascending_prime_order(self, quartic):
        ctx = IdealContext(quartic)
        a = ctx.make_ideal({2: (0, 0, 1), 3: (3, 0)})
        assert format_factorization(ctx, a) == "3.1^3*4.1"

    def test_malformed_rejected(self, quartic):
        ctx = IdealContext(quartic)
        for bad in ("2.0", "2.1^0", "02.1", "2.1**3", "x", "2.1^", "4.1^2*"):
            with pytest.raises(InvalidInputError):
                parse_factorization(ctx, bad)

    def test_unknown_prime_index(self, quartic):
        ctx = IdealContext(quartic)
        with pytest.raises(NoSuchIdealError):
            parse_factorization(ctx, "2.9")

    def test_label_grammar(self):
        assert str(parse_label("108.4")) == "108.4"
        for bad in ("1.0", "0.1", "01.1", "1.", ".1", "1.1.1", "-1.1"):
            with pytest.raises(InvalidInputError):
                parse_label(bad)
