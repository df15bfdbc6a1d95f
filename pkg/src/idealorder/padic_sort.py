"""p-adic factors of the defining polynomial, canonically sorted.

Factors of g over Z_p are carried as finite-precision approximations mod p^k
and ordered by (degree, interleaved base-p digit vector).  The provider chain
is: coprime Hensel lifting when p does not divide disc(g); otherwise cluster
lifting plus a budgeted divisor search that either certifies a split (then
lifts it quadratically) or certifies irreducibility (no divisor survives);
fixture data is the fallback when the search budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    FixtureRequired,
    InvalidInputError,
    NeedsMorePrecision,
    PrecisionExhausted,
    ValidationError,
)
from .exact_arith import IntPoly, ModPoly, factor_mod_p, hensel_lift, resultant

SPLIT_BUDGET = 10 ** 6

PROVENANCE_INTERNAL = "internal-hensel"
PROVENANCE_FIXTURE = "fixture"


@dataclass(frozen=True)
class PadicFactorApprox:
    """Monic factor of g in Z_p[X], known modulo p^k.

    `coeffs` lists the non-leading coefficients, constant term first, each in
    [0, p^k); the monic leading coefficient is implicit.
    """

    p: int
    k: int
    coeffs: tuple[int, ...]
    provenance: str = PROVENANCE_INTERNAL

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def lift(self) -> IntPoly:
        return IntPoly(self.coeffs + (1,))

    def reduce_to(self, k: int) -> "PadicFactorApprox":
        if k > self.k:
            raise InvalidInputError(f"cannot raise precision {self.k} to {k} by truncation")
        if k == self.k:
            return self
        pk = self.p ** k
        return PadicFactorApprox(self.p, k, tuple(c % pk for c in self.coeffs), self.provenance)

    def __str__(self) -> str:
        return f"{self.lift()} (mod {self.p}^{self.k})"


@dataclass(frozen=True)
class DigitKey:
    digits: tuple[int, ...]


def digit_key(h: PadicFactorApprox) -> DigitKey:
    """Base-p digits interleaved digit-position first, coefficient index second.

    The monic leading coefficient contributes no digits: it is identical for
    all monic factors of equal degree, so omitting it never changes the order.
    """
    p, k = h.p, h.k
    digits = []
    cs = list(h.coeffs)
    for _ in range(k):
        digits.extend(c % p for c in cs)
        cs = [c // p for c in cs]
    return DigitKey(tuple(digits))


def sort_factors(factors: list[PadicFactorApprox]) -> list[PadicFactorApprox]:
    """Ascending (degree, digit key) order; fails if the precision cannot
    separate two factors of equal degree."""
    if not factors:
        return []
    p, k = factors[0].p, factors[0].k
    if any(h.p != p or h.k != k for h in factors):
        raise InvalidInputError("factors must share (p, k)")
    keyed = sorted((h.degree, digit_key(h).digits, h) for h in factors)
    for (d1, k1, h1), (d2, k2, h2) in zip(keyed, keyed[1:]):
        if d1 == d2 and k1 == k2:
            raise NeedsMorePrecision(
                k, f"factors {h1} and {h2} share their digit key at k={k}"
            )
    return [h for _, _, h in keyed]


# ---------------------------------------------------------------------------
# provider chain

def padic_factors(K, p: int, k: int, fixture_data=None,
                  budget: int = SPLIT_BUDGET) -> list[PadicFactorApprox]:
    """Factors of g mod p^k whose product is g mod p^k.

    `fixture_data` is the FieldFixture (or None); its prime blocks supply the
    expected factor-degree multiset {e_i * f_i} and its padic blocks are the
    fallback when internal splitting cannot decide within `budget`.
    """
    if k < 1:
        raise InvalidInputError("precision k must be >= 1")
    g = K.poly
    if K.disc_poly % p != 0:
        parts = [h for h, _ in factor_mod_p(g, p)]
        return _lift_parts(g, parts, p, k)

    expected = None
    if fixture_data is not None and p in fixture_data.primes:
        expected = sorted(b.e * b.f for b in fixture_data.primes[p])

    clusters = _cluster_nodes(g, p)
    factors: list[_Node] = list(clusters)
    state = _Budget(budget)
    while True:
        degrees = sorted(n.degree for n in factors)
        if expected is not None and degrees == expected:
            break  # every remaining factor is irreducible
        node = next((n for n in factors if not n.irreducible and not n.undecided), None)
        if node is None:
            if all(n.irreducible for n in factors):
                if expected is not None and degrees != expected:
                    raise ValidationError(
                        str(K.label), f"p={p}: factor degrees {degrees} != fixture e*f {expected}"
                    )
                break
            return _fixture_fallback(K, p, k, fixture_data)
        result = _try_split(node, p, state)
        if result is None:
            node.undecided = True
        elif result == "irreducible":
            node.irreducible = True
        else:
            factors.remove(node)
            factors.extend(result)
    out = [f.approx(k) for f in factors]
    _check_product(g, out, p, k)
    return out


def _fixture_fallback(K, p, k, fixture_data):
    if fixture_data is None or p not in fixture_data.padic:
        raise FixtureRequired(p, "internal cluster splitting exhausted its budget "
                                 "and no fixture p-adic factors are available")
    block = fixture_data.padic[p]
    if block.precision_k < k:
        raise FixtureRequired(
            p, f"fixture p-adic factors stored at precision {block.precision_k} < requested {k}"
        )
    pk = p ** k
    out = [
        PadicFactorApprox(p, k, tuple(c % pk for c in row), PROVENANCE_FIXTURE)
        for row in block.factor_coeffs
    ]
    _check_product(K.poly, out, p, k)
    return out


def _check_product(g: IntPoly, factors: list[PadicFactorApprox], p: int, k: int):
    pk = p ** k
    prod = ModPoly(pk, (1,))
    for h in factors:
        prod = prod * ModPoly(pk, h.coeffs + (1,))
    if prod != g.reduce_mod(pk):
        raise ValidationError("<padic>", f"factor product != g mod {p}^{k}")


def _lift_parts(g, parts, p, k):
    if k == 1:
        lifted = parts
    else:
        lifted = hensel_lift(g, parts, p, k)
    return [
        PadicFactorApprox(p, k, h.coeffs[:-1], PROVENANCE_INTERNAL) for h in lifted
    ]


# ---------------------------------------------------------------------------
# factor nodes: every node can reproduce itself at any precision

class _Budget:
    def __init__(self, total):
        self.left = total

    def spend(self, n=1) -> bool:
        self.left -= n
        return self.left >= 0


class _Node:
    """A true factor of g over Z_p, reproducible at any precision."""

    def __init__(self, degree, image_base, image_mult):
        self.degree = degree
        self.image_base = image_base  # irreducible mod-p poly (ModPoly)
        self.image_mult = image_mult
        self.irreducible = image_mult == 1
        self.undecided = False

    def value_at(self, k) -> IntPoly:
        raise NotImplementedError

    def approx(self, k) -> PadicFactorApprox:
        pk = self.image_base.modulus ** k
        v = self.value_at(k)
        return PadicFactorApprox(
            self.image_base.modulus, k, tuple(c % pk for c in v.coeffs[:-1]),
            PROVENANCE_INTERNAL,
        )


class _ClusterNode(_Node):
    def __init__(self, g, p, parts, index):
        base, mult = parts[index]
        prod = ModPoly(p, (1,))
        for _ in range(mult):
            prod = prod * base
        super().__init__(prod.degree, base, mult)
        self._g = g
        self._p = p
        self._parts = parts
        self._index = index
        self._cache: dict[int, IntPoly] = {}

    def value_at(self, k) -> IntPoly:
        if k not in self._cache:
            mods = []
            for base, mult in self._parts:
                prod = ModPoly(self._p, (1,))
                for _ in range(mult):
                    prod = prod * base
                mods.append(prod)
            lifted = hensel_lift(self._g, mods, self._p, k) if k > 1 else mods
            self._cache[k] = lifted[self._index].lift()
        return self._cache[k]


class _SplitNode(_Node):
    def __init__(self, parent, own_start, other_start, s, rho, image_base, image_mult, p):
        d = own_start.degree
        super().__init__(d, image_base, image_mult)
        self._parent = parent
        self._own = own_start
        self._other = other_start
        self._s = s
        self._rho = rho
        self._p = p
        self._cache: dict[int, IntPoly] = {}

    def value_at(self, k) -> IntPoly:
        if k not in self._cache:
            target = k + self._rho
            C = self._parent.value_at(target + self._rho + 2)
            A, B = _lift_pair(C, self._own, self._other, self._s, self._rho,
                              self._p, target)
            pk = self._p ** k
            self._cache[k] = IntPoly([c % pk for c in A.coeffs[:-1]] + [1])
        return self._cache[k]


def _cluster_nodes(g, p):
    parts = factor_mod_p(g, p)
    return [_ClusterNode(g, p, parts, i) for i in range(len(parts))]


# ---------------------------------------------------------------------------
# certified divisor search (breadth-first refinement over precision levels)

def _try_split(node: _Node, p: int, state: _Budget):
    """Either split `node` into two child nodes, certify it irreducible, or
    give up (None) when the budget is exhausted.

    A divisor candidate A at level s survives if it divides the cluster mod
    p^s; a true divisor survives every level, so an empty survivor set proves
    irreducibility.  A surviving split (A, B) is accepted once
    s >= 2*v_p(Res(A, B)) + 1, which guarantees quadratic lifting converges.
    """
    phi = node.image_base
    m = node.image_mult
    d0 = phi.degree
    for m_prime in range(1, m // 2 + 1):
        base = ModPoly(p, (1,))
        for _ in range(m_prime):
            base = base * phi
        dA = base.degree
        survivors = [base.coeffs[:-1]]
        s = 2
        alive = True
        while alive:
            # enumerating the next level costs |survivors| * p^dA candidates;
            # refuse (leaving the budget intact for other clusters) if that
            # alone busts it
            fanout = p ** dA
            if len(survivors) * fanout > state.left:
                return None
            ps = p ** s
            C = node.value_at(s)
            Cmod = ModPoly(ps, C.coeffs)
            step = p ** (s - 1)
            new_survivors = []
            for prefix in survivors:
                for delta in _digit_vectors(p, dA):
                    if not state.spend():
                        return None
                    cand = ModPoly(
                        ps,
                        tuple((c + step * t) % ps for c, t in zip(prefix, delta)) + (1,),
                    )
                    quo, rem = Cmod.divmod(cand)
                    if not rem.is_zero:
                        continue
                    rho = _certificate(cand, quo, p)
                    if rho is not None and s >= 2 * rho + 1:
                        return _make_children(node, cand, quo, s, rho, p, m_prime)
                    new_survivors.append(cand.coeffs[:-1])
            survivors = new_survivors
            if not survivors:
                alive = False  # no divisor with this mod-p image exists
            s += 1
    return "irreducible"


def _digit_vectors(p, length):
    total = p ** length
    for v in range(total):
        out = []
        x = v
        for _ in range(length):
            out.append(x % p)
            x //= p
        yield tuple(out)


def _certificate(a: ModPoly, b: ModPoly, p: int):
    r = resultant(a.lift(), b.lift())
    if r == 0:
        return None
    rho = 0
    while r % p == 0:
        r //= p
        rho += 1
    return rho


def _make_children(node, a: ModPoly, b: ModPoly, s, rho, p, m_prime):
    a_int = a.lift()
    b_int = b.lift()
    left = _SplitNode(node, a_int, b_int, s, rho, node.image_base, m_prime, p)
    right = _SplitNode(node, b_int, a_int, s, rho, node.image_base,
                       node.image_mult - m_prime, p)
    return [left, right]


# ---------------------------------------------------------------------------
# quadratic lifting of a certified split

def _poly_xgcd_rational(a: IntPoly, b: IntPoly):
    """u, v over Q with u*a + v*b = 1 (valid since Res(a, b) != 0)."""
    from fractions import Fraction

    def to_frac(poly):
        return [Fraction(c) for c in poly.coeffs]

    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    def fdivmod(x, y):
        x = list(x)
        q = [Fraction(0)] * max(len(x) - len(y) + 1, 0)
        while len(x) >= len(y) and any(x):
            if x[-1] == 0:
                x.pop()
                continue
            c = x[-1] / y[-1]
            sh = len(x) - len(y)
            q[sh] = c
            for i, yc in enumerate(y):
                x[sh + i] -= c * yc
            x.pop()
        return q, trim(x)

    r0, r1 = to_frac(a), to_frac(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def sub_mul(u, q, v):
        prod = [Fraction(0)] * (len(q) + len(v) - 1) if q and v else []
        for i, qc in enumerate(q):
            for j, vc in enumerate(v):
                prod[i + j] += qc * vc
        out = [Fraction(0)] * max(len(u), len(prod))
        for i, c in enumerate(u):
            out[i] += c
        for i, c in enumerate(prod):
            out[i] -= c
        return trim(out)

    while r1:
        q, r = fdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub_mul(s0, q, s1)
        t0, t1 = t1, sub_mul(t0, q, t1)
    c = r0[-1]
    u = [x / c for x in s0]
    v = [x / c for x in t0]
    return u, v


def _lift_pair(C: IntPoly, A: IntPoly, B: IntPoly, s: int, rho: int, p: int, target: int):
    """From C = A*B mod p^s with v_p(Res(A, B)) = rho and s >= 2*rho + 1,
    refine (A, B) until C = A*B mod p^target; A, B stay monic and congruent
    to their inputs mod p^(s-rho).

    The achieved precision is measured from the actual error each pass rather
    than predicted, so a slow step only costs an extra iteration."""
    cap = target + rho + 2
    P = p ** cap
    R = resultant(A, B)
    if R == 0 or _vp(R, p) != rho:
        raise PrecisionExhausted("resultant valuation drifted during lifting")
    prho = p ** rho
    w_inv = pow((R // prho) % P, -1, P)
    u_frac, v_frac = _poly_xgcd_rational(A, B)
    # R*u, R*v are integral: Cramer over the Sylvester matrix
    U = IntPoly([_as_int(R * c) for c in u_frac])
    V = IntPoly([_as_int(R * c) for c in v_frac])
    a = ModPoly(P, A.coeffs)
    b = ModPoly(P, B.coeffs)
    Cmod = ModPoly(P, C.coeffs)
    for _ in range(cap + 8):
        e = Cmod - a * b
        if e.is_zero or min(_vp(c, p) for c in e.coeffs if c) >= target:
            break
        # U*A + V*B = R, so E = (E*V/R)*B + (E*U/R)*A: the V-side increments A.
        # Reducing each increment mod its own factor keeps degrees below
        # deg A / deg B; the dropped quotients cancel up to terms whose
        # valuation strictly exceeds the current error's.
        eu = IntPoly([(c * w_inv) % P for c in _exact_div(e.lift() * U, prho).coeffs])
        ev = IntPoly([(c * w_inv) % P for c in _exact_div(e.lift() * V, prho).coeffs])
        da = ModPoly(P, ev.coeffs).divmod(a)[1]
        db = ModPoly(P, eu.coeffs).divmod(b)[1]
        a = a + da
        b = b + db
    pk = p ** target
    A_out = IntPoly([c % pk for c in a.coeffs[:-1]] + [1])
    B_out = IntPoly([c % pk for c in b.coeffs[:-1]] + [1])
    prod = ModPoly(pk, A_out.coeffs) * ModPoly(pk, B_out.coeffs)
    if prod != ModPoly(pk, C.coeffs):
        raise PrecisionExhausted("certified split failed to lift to the target precision")
    return A_out, B_out


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _as_int(x) -> int:
    if x.denominator != 1:
        raise PrecisionExhausted("Bezout cofactors were not integral")
    return int(x)


def _exact_div(a: IntPoly, d: int) -> IntPoly:
    out = []
    for c in a.coeffs:
        if c % d:
            raise PrecisionExhausted("inexact division during pair lifting")
        out.append(c // d)
    return IntPoly(out)


# ---------------------------------------------------------------------------
# precision escalation

def sorted_factors(K, p: int, k_start: int = 2, k_max: int = 64,
                   fixture_data=None) -> tuple[list[PadicFactorApprox], int]:
    """Escalate k (doubling) until the factor order is strict; returns
    (sorted factors, the precision that worked)."""
    k = k_start
    while True:
        factors = padic_factors(K, p, k, fixture_data)
        try:
            return sort_factors(factors), k
        except NeedsMorePrecision as exc:
            if k >= k_max:
                raise PrecisionExhausted(
                    f"factor order not strict at precision cap k={k_max}: {exc}"
                ) from exc
            k = min(2 * k, k_max)
