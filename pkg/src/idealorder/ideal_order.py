"""Total order and N.i labels on all nonzero integral ideals.

Ideals of prime-power norm are ordered by (norm, weight, reverse-lexicographic
exponent vector), where reverse-lexicographic means descending lexicographic
comparison of (v_1, ..., v_r) in canonical prime order.  General ideals
compare by norm, then lexicographically over their prime-power components in
ascending order of the rational prime.

rank/unrank convert between ideals and labels in time polynomial in log N
(given the factorization of N) via suffix-counting dynamic programs, without
enumerating the norm fiber.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInputError, NoSuchIdealError
from .exact_arith import factorize
from .field_model import FieldFixture
from .prime_order import DEFAULT_K_MAX, LabeledPrime, sort_primes_above


@dataclass(frozen=True)
class IdealLabel:
    norm: int
    index: int

    def __str__(self) -> str:
        return f"{self.norm}.{self.index}"


LABEL_RE = re.compile(r"^([1-9][0-9]*)\.([1-9][0-9]*)$")


def parse_label(text: str) -> IdealLabel:
    m = LABEL_RE.match(text.strip())
    if not m:
        raise InvalidInputError(f"malformed label {text!r} (expected N.i in decimal)")
    return IdealLabel(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class SplittingProfile:
    """(e_i, f_i) of the canonically ordered primes above one rational p."""

    p: int
    ef: tuple[tuple[int, int], ...]

    @property
    def fvec(self) -> tuple[int, ...]:
        return tuple(f for _, f in self.ef)


@dataclass(frozen=True)
class Ideal:
    """Exponent vectors over canonically ordered primes, keyed by p.

    components holds (p, exponents) pairs sorted by p; all-zero vectors are
    dropped, so the unit ideal has no components.
    """

    components: tuple[tuple[int, tuple[int, ...]], ...]
    norm: int

    @property
    def is_unit(self) -> bool:
        return not self.components

    def exponents(self, p: int):
        for q, v in self.components:
            if q == p:
                return v
        return None


def weight(v) -> int:
    return sum(v)


# ---------------------------------------------------------------------------
# counting / ranking DP per splitting profile

class _ComponentDP:
    """Suffix counts for exponent vectors against one profile's f-vector."""

    def __init__(self, fvec: tuple[int, ...]):
        self.f = fvec
        self._memo: dict[tuple[int, int, int], int] = {}

    def suffix_count(self, i: int, n: int, w: int) -> int:
        """#{(v_i, ..., v_r) >= 0 : sum v_j f_j = n, sum v_j = w}."""
        if n < 0 or w < 0:
            return 0
        if i == len(self.f):
            return 1 if n == 0 and w == 0 else 0
        key = (i, n, w)
        if key not in self._memo:
            fi = self.f[i]
            self._memo[key] = sum(
                self.suffix_count(i + 1, n - c * fi, w - c)
                for c in range(0, min(n // fi, w) + 1)
            )
        return self._memo[key]

    def count_weight(self, n: int, w: int) -> int:
        return self.suffix_count(0, n, w)

    def count(self, n: int) -> int:
        if n == 0:
            return 1
        return sum(self.count_weight(n, w) for w in range(1, n + 1))

    def rank(self, v: tuple[int, ...]) -> int:
        """0-based position of v among the vectors of its norm exponent."""
        n = sum(c * f for c, f in zip(v, self.f))
        w = weight(v)
        before = sum(self.count_weight(n, u) for u in range(1, w))
        # within the weight class, descending lex: count vectors strictly
        # greater, i.e. sharing a prefix then exceeding v at some position
        rem_n, rem_w = n, w
        for i, c in enumerate(v):
            fi = self.f[i]
            for d in range(c + 1, min(rem_n // fi, rem_w) + 1):
                before += self.suffix_count(i + 1, rem_n - d * fi, rem_w - d)
            rem_n -= c * fi
            rem_w -= c
        return before

    def unrank(self, n: int, idx: int) -> tuple[int, ...]:
        """Inverse of rank for the norm exponent n (idx is 0-based)."""
        if n == 0:
            if idx == 0:
                return (0,) * len(self.f)
            raise NoSuchIdealError(1, idx + 1, 1)
        w = 1
        while True:
            c = self.count_weight(n, w)
            if idx < c:
                break
            idx -= c
            w += 1
            if w > n:
                raise NoSuchIdealError(n, idx + 1, self.count(n))
        v = []
        rem_n, rem_w = n, w
        for i in range(len(self.f)):
            fi = self.f[i]
            # descending lex: try the largest exponent first
            for c in range(min(rem_n // fi, rem_w), -1, -1):
                cnt = self.suffix_count(i + 1, rem_n - c * fi, rem_w - c)
                if idx < cnt:
                    v.append(c)
                    rem_n -= c * fi
                    rem_w -= c
                    break
                idx -= cnt
            else:
                raise NoSuchIdealError(n, idx + 1, self.count(n))
        return tuple(v)


# ---------------------------------------------------------------------------
# context: a fixture plus caches for primes, profiles, and DP tables

class IdealContext:
    """Everything needed to order and label ideals of one field."""

    def __init__(self, fixture: FieldFixture, k_max: int = DEFAULT_K_MAX):
        self.fixture = fixture
        self.field = fixture.field
        self.k_max = k_max
        self._primes: dict[int, list[LabeledPrime]] = {}
        self._dp: dict[int, _ComponentDP] = {}

    def primes_above(self, p: int) -> list[LabeledPrime]:
        if p not in self._primes:
            self._primes[p] = sort_primes_above(self.fixture, p, k_max=self.k_max)
        return self._primes[p]

    def profile(self, p: int) -> SplittingProfile:
        return SplittingProfile(
            p, tuple((lp.prime.e, lp.prime.f) for lp in self.primes_above(p))
        )

    def dp(self, p: int) -> _ComponentDP:
        if p not in self._dp:
            self._dp[p] = _ComponentDP(self.profile(p).fvec)
        return self._dp[p]

    # -- ideal constructors ---------------------------------------------------

    def make_ideal(self, exponents: dict[int, tuple[int, ...]]) -> Ideal:
        comps = []
        norm = 1
        for p in sorted(exponents):
            v = tuple(int(c) for c in exponents[p])
            prof = self.profile(p)
            if len(v) != len(prof.ef):
                raise InvalidInputError(
                    f"expected {len(prof.ef)} exponents above {p}, got {len(v)}"
                )
            if any(c < 0 for c in v):
                raise InvalidInputError("negative exponent")
            if all(c == 0 for c in v):
                continue
            comps.append((p, v))
            for c, (_, f) in zip(v, prof.ef):
                norm *= (p ** f) ** c
        return Ideal(components=tuple(comps), norm=norm)

    def unit_ideal(self) -> Ideal:
        return Ideal(components=(), norm=1)

    def prime_ideal(self, p: int, position: int) -> Ideal:
        r = len(self.profile(p).ef)
        v = tuple(int(i == position) for i in range(r))
        return self.make_ideal({p: v})


# ---------------------------------------------------------------------------
# comparisons

def cmp_prime_power(ctx: IdealContext, a: Ideal, b: Ideal) -> int:
    """Order two ideals supported above the same single p."""
    pa = _single_p(a)
    pb = _single_p(b)
    if pa != pb:
        raise InvalidInputError("cmp_prime_power requires ideals above the same p")
    return _cmp(_prime_power_key(a.exponents(pa), ctx.profile(pa)),
                _prime_power_key(b.exponents(pb), ctx.profile(pb)))


def _single_p(a: Ideal) -> int:
    if len(a.components) != 1:
        raise InvalidInputError("not a prime-power-norm ideal")
    return a.components[0][0]


def _prime_power_key(v, profile: SplittingProfile):
    norm = 1
    for c, (_, f) in zip(v, profile.ef):
        norm *= (profile.p ** f) ** c
    return (norm, weight(v), tuple(-c for c in v))


def cmp_ideals(ctx: IdealContext, a: Ideal, b: Ideal) -> int:
    if a.norm != b.norm:
        return -1 if a.norm < b.norm else 1
    return _cmp(ideal_sort_key(ctx, a), ideal_sort_key(ctx, b))


def ideal_sort_key(ctx: IdealContext, a: Ideal):
    """Total-order sort key: norm, then per-prime component keys ascending p."""
    return (
        a.norm,
        tuple(
            _prime_power_key(v, ctx.profile(p)) for p, v in a.components
        ),
    )


def _cmp(x, y) -> int:
    return (x > y) - (x < y)


def multiply(ctx: IdealContext, a: Ideal, b: Ideal) -> Ideal:
    exps: dict[int, list[int]] = {}
    for p, v in a.components + b.components:
        if p in exps:
            cur = exps[p]
            for i, c in enumerate(v):
                cur[i] += c
        else:
            exps[p] = list(v)
    return ctx.make_ideal({p: tuple(v) for p, v in exps.items()})


# ---------------------------------------------------------------------------
# enumeration, counting, rank, unrank

def _norm_exponents(ctx: IdealContext, N: int, factored=None) -> dict[int, int]:
    if N < 1:
        raise InvalidInputError("norms are positive integers")
    return dict(factored) if factored is not None else factorize(N)


def enumerate_norm(ctx: IdealContext, N: int, factored=None) -> list[Ideal]:
    """All ideals of norm exactly N in canonical order (generate then sort)."""
    fac = _norm_exponents(ctx, N, factored)
    per_p = []
    for p, a in sorted(fac.items()):
        prof = ctx.profile(p)
        vecs = _vectors_with_norm(prof.fvec, a)
        if not vecs:
            return []
        vecs.sort(key=lambda v: _prime_power_key(v, prof))
        per_p.append((p, vecs))
    out = [ctx.unit_ideal()] if not per_p else []
    if per_p:
        def build(i, chosen):
            if i == len(per_p):
                out.append(ctx.make_ideal({p: v for (p, _), v in zip(per_p, chosen)}))
                return
            for v in per_p[i][1]:
                build(i + 1, chosen + [v])

        build(0, [])
    return out


def _vectors_with_norm(fvec, n):
    out = []

    def rec(i, rem, acc):
        if i == len(fvec):
            if rem == 0:
                out.append(tuple(acc))
            return
        f = fvec[i]
        for c in range(rem // f + 1):
            rec(i + 1, rem - c * f, acc + [c])

    rec(0, n, [])
    return out


def count_norm(ctx: IdealContext, N: int, factored=None) -> int:
    fac = _norm_exponents(ctx, N, factored)
    total = 1
    for p, a in fac.items():
        total *= ctx.dp(p).count(a)
    return total


def rank(ctx: IdealContext, ideal: Ideal) -> IdealLabel:
    """Label of an ideal: index = 1 + number of ideals of the same norm that
    precede it, computed by mixed-radix combination of per-component ranks."""
    N = ideal.norm
    fac = _norm_exponents(ctx, N)
    idx = 0
    for p, a in sorted(fac.items()):
        dp = ctx.dp(p)
        v = ideal.exponents(p)
        if v is None:
            raise InvalidInputError("ideal does not match its norm factorization")
        idx = idx * dp.count(a) + dp.rank(v)
    return IdealLabel(N, idx + 1)


def unrank(ctx: IdealContext, label: IdealLabel) -> Ideal:
    N, i = label.norm, label.index
    fac = _norm_exponents(ctx, N)
    counts = []
    for p, a in sorted(fac.items()):
        counts.append((p, a, ctx.dp(p).count(a)))
    total = 1
    for _, _, c in counts:
        total *= c
    if not (1 <= i <= total):
        raise NoSuchIdealError(N, i, total)
    idx = i - 1
    exps: dict[int, tuple[int, ...]] = {}
    for p, a, c in reversed(counts):
        idx, pos = divmod(idx, c)
        exps[p] = ctx.dp(p).unrank(a, pos)
    return ctx.make_ideal(exps)


# ---------------------------------------------------------------------------
# factorization strings: "2.1^2*27.2" style

_TERM_RE = re.compile(r"^([1-9][0-9]*)\.([1-9][0-9]*)(?:\^([1-9][0-9]*))?$")


def format_factorization(ctx: IdealContext, ideal: Ideal) -> str:
    if ideal.is_unit:
        return "(1)"
    terms = []
    for p, v in ideal.components:
        primes = ctx.primes_above(p)
        for pos, c in enumerate(v):
            if c == 0:
                continue
            label = primes[pos].label
            terms.append((label.norm, label.index, c))
    terms.sort(key=lambda t: (t[0], t[1]))
    return "*".join(
        f"{n}.{i}" + (f"^{c}" if c > 1 else "") for n, i, c in terms
    )


def parse_factorization(ctx: IdealContext, text: str) -> Ideal:
    s = text.strip()
    if s == "(1)":
        return ctx.unit_ideal()
    exps: dict[int, list[int]] = {}
    for term in s.split("*"):
        m = _TERM_RE.match(term.strip())
        if not m:
            raise InvalidInputError(
                f"malformed factorization term {term!r} (expected <norm>.<index>[^<exp>])"
            )
        norm, index, exp = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
        fac = factorize(norm)
        if len(fac) != 1:
            raise InvalidInputError(f"prime label norm {norm} is not a prime power")
        p, f = next(iter(fac.items()))
        primes = ctx.primes_above(p)
        matches = [pos for pos, lp in enumerate(primes) if lp.label == _as_prime_label(norm, index)]
        if not matches:
            count = sum(1 for lp in primes if lp.prime.norm == norm)
            raise NoSuchIdealError(norm, index, count)
        pos = matches[0]
        exps.setdefault(p, [0] * len(primes))
        exps[p][pos] += exp
    return ctx.make_ideal({p: tuple(v) for p, v in exps.items()})


def _as_prime_label(norm, index):
    from .prime_order import PrimeLabel

    return PrimeLabel(norm, index)
