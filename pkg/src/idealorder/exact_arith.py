"""Exact integer / modular polynomial arithmetic.

Everything here is pure and exact: arbitrary-precision integers throughout,
no floating point.  Polynomials are stored constant term first.  Rational
numbers are `fractions.Fraction` (re-exported as `Rational`).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest

from .errors import InvalidInputError, NotCoprimeError

Rational = Fraction

_KARATSUBA_CUTOFF = 32
_DEFAULT_SEED = 0x1DEA  # reproducible equal-degree splitting


# ---------------------------------------------------------------------------
# raw coefficient-tuple helpers (constant term first)

def _trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _add(a, b):
    return _trim([x + y for x, y in zip_longest(a, b, fillvalue=0)])


def _sub(a, b):
    return _trim([x - y for x, y in zip_longest(a, b, fillvalue=0)])


def _mul_school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _mul(a, b):
    if not a or not b:
        return ()
    if min(len(a), len(b)) < _KARATSUBA_CUTOFF:
        return _trim(_mul_school(a, b))
    return _trim(_mul_karatsuba(list(a), list(b)))


def _mul_karatsuba(a, b):
    n = max(len(a), len(b))
    if min(len(a), len(b)) < _KARATSUBA_CUTOFF:
        return _mul_school(a, b)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _mul_karatsuba(a0, b0) if a0 and b0 else []
    z2 = _mul_karatsuba(a1, b1) if a1 and b1 else []
    s0 = [x + y for x, y in zip_longest(a0, a1, fillvalue=0)]
    s1 = [x + y for x, y in zip_longest(b0, b1, fillvalue=0)]
    z1 = _mul_karatsuba(s0, s1) if s0 and s1 else []
    z1 = [x - y for x, y in zip_longest(z1, z0, fillvalue=0)]
    z1 = [x - y for x, y in zip_longest(z1, z2, fillvalue=0)]
    out = [0] * (len(a) + len(b) - 1)
    for i, v in enumerate(z0):
        out[i] += v
    for i, v in enumerate(z1):
        if i + h < len(out):
            out[i + h] += v
    for i, v in enumerate(z2):
        out[i + 2 * h] += v
    return out


# ---------------------------------------------------------------------------
# integer polynomials

@dataclass(frozen=True)
class IntPoly:
    """A polynomial in Z[X]; `coeffs` holds the constant term first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _trim([int(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_mul(self.coeffs, other.coeffs))

    def scale(self, c: int) -> "IntPoly":
        return IntPoly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "IntPoly":
        """Multiply by X^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Exact division with remainder by a monic divisor, over Z."""
        if not d.is_monic:
            raise InvalidInputError("divisor must be monic")
        r = list(self.coeffs)
        dd = d.degree
        q = [0] * max(len(r) - dd, 0)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c:
                q[i - dd] = c
                for j, dc in enumerate(d.coeffs):
                    r[i - dd + j] -= c * dc
        return IntPoly(q), IntPoly(r)

    def reduce_mod(self, m: int) -> "ModPoly":
        return ModPoly(m, self.coeffs)

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs, var: str = "X") -> str:
    """Human-readable rendering, highest degree first."""
    if not any(coeffs):
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts)


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) via fraction-free (Bareiss) elimination of the Sylvester matrix."""
    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - m - 1 - i))
    # Bareiss: exact integer elimination
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[size - 1][size - 1]


def discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^(n(n-1)/2) * Res(f, f') for monic f."""
    if not f.is_monic or f.degree < 1:
        raise InvalidInputError("discriminant requires a monic polynomial of degree >= 1")
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


# ---------------------------------------------------------------------------
# modular polynomials

@dataclass(frozen=True)
class ModPoly:
    """A polynomial over Z/m; coefficients normalized to [0, m)."""

    modulus: int
    coeffs: tuple[int, ...]

    def __init__(self, modulus: int, coeffs):
        if modulus < 2:
            raise InvalidInputError("modulus must be >= 2")
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "coeffs", _trim([int(c) % modulus for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def _like(self, coeffs) -> "ModPoly":
        return ModPoly(self.modulus, coeffs)

    def __add__(self, other: "ModPoly") -> "ModPoly":
        return self._like(_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        return self._like(_sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        m = self.modulus
        out = _mul(self.coeffs, other.coeffs)
        return self._like([c % m for c in out])

    def scale(self, c: int) -> "ModPoly":
        return self._like([c * a for a in self.coeffs])

    def eval(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    def lift(self) -> IntPoly:
        """Least-nonnegative-representative lift to Z[X]."""
        return IntPoly(self.coeffs)

    def reduce_to(self, modulus: int) -> "ModPoly":
        if self.modulus % modulus:
            raise InvalidInputError("can only reduce to a divisor of the modulus")
        return ModPoly(modulus, self.coeffs)

    def divmod(self, d: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        """Division with remainder; the divisor's leading coefficient must be a unit."""
        m = self.modulus
        if d.is_zero:
            raise InvalidInputError("division by zero polynomial")
        lc = d.coeffs[-1]
        g = math.gcd(lc, m)
        if g != 1:
            raise InvalidInputError("divisor leading coefficient not invertible")
        inv = pow(lc, -1, m)
        r = list(self.coeffs)
        dd = d.degree
        q = [0] * max(len(r) - dd, 0)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i] % m
            if c:
                c = c * inv % m
                q[i - dd] = c
                for j, dc in enumerate(d.coeffs):
                    r[i - dd + j] = (r[i - dd + j] - c * dc) % m
            else:
                r[i] = 0
        return self._like(q), self._like(r)

    def monic(self) -> "ModPoly":
        if self.is_zero:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = pow(lc, -1, self.modulus)
        return self.scale(inv)

    def pow_mod(self, e: int, mod: "ModPoly") -> "ModPoly":
        """self^e modulo `mod` (and the coefficient modulus)."""
        result = self._like((1,))
        base = self.divmod(mod)[1]
        while e:
            if e & 1:
                result = (result * base).divmod(mod)[1]
            base = (base * base).divmod(mod)[1]
            e >>= 1
        return result

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def poly_gcd_mod_p(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd in F_p[X]; the shared modulus must be prime."""
    if a.modulus != b.modulus:
        raise InvalidInputError("gcd operands must share a modulus")
    if not is_prime(a.modulus):
        raise InvalidInputError(f"gcd requires a prime modulus, got {a.modulus}")
    if a.is_zero and b.is_zero:
        raise InvalidInputError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_xgcd_mod_p(a: ModPoly, b: ModPoly) -> tuple[ModPoly, ModPoly, ModPoly]:
    """(g, u, v) with u*a + v*b = g = monic gcd, over F_p."""
    p = a.modulus
    one, zero = ModPoly(p, (1,)), ModPoly(p, ())
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        raise InvalidInputError("xgcd(0, 0) is undefined")
    lc = r0.coeffs[-1]
    inv = pow(lc, -1, p)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ---------------------------------------------------------------------------
# primality / integer factorization (CLI support, trial division + Pollard rho)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise InvalidInputError("factorize requires n >= 1")
    out: dict[int, int] = {}
    for q in (2, 3, 5):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 10 ** 6:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        for q in _rho_factor(n):
            out[q] = out.get(q, 0) + 1
    return dict(sorted(out.items()))


def _rho_factor(n: int) -> list[int]:
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    if n % 2 == 0:
        return [2] + _rho_factor(n // 2)
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return sorted(_rho_factor(d) + _rho_factor(n // d))


# ---------------------------------------------------------------------------
# factorization over F_p (squarefree + distinct-degree + Cantor-Zassenhaus)

def factor_mod_p(f: IntPoly, p: int, seed: int = _DEFAULT_SEED) -> list[tuple[ModPoly, int]]:
    """Full factorization of monic f over F_p.

    Returns (irreducible monic factor, multiplicity) pairs sorted by
    (degree, coefficient tuple read from the constant term).  The randomized
    equal-degree stage is seeded, so output is reproducible run to run.
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if not f.is_monic:
        raise InvalidInputError("factor_mod_p requires a monic polynomial")
    fb = f.reduce_mod(p)
    rng = random.Random(seed)
    found: dict[tuple[int, ...], int] = {}
    for part, mult in _squarefree_parts(fb, p):
        for d, prod in _distinct_degree(part, p):
            for irr in _equal_degree(prod, d, p, rng):
                found[irr.coeffs] = found.get(irr.coeffs, 0) + mult
    out = [(ModPoly(p, c), m) for c, m in found.items()]
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def _pth_root(f: ModPoly, p: int) -> ModPoly:
    # in F_p, a^(1/p) = a, so the root just gathers every p-th coefficient
    return ModPoly(p, f.coeffs[::p])


def _squarefree_parts(f: ModPoly, p: int) -> list[tuple[ModPoly, int]]:
    out: list[tuple[ModPoly, int]] = []
    e = 1
    while f.degree > 0:
        d = ModPoly(p, [i * c for i, c in enumerate(f.coeffs)][1:])
        if d.is_zero:
            f = _pth_root(f, p)
            e *= p
            continue
        g = poly_gcd_mod_p(f, d)
        w = f.divmod(g)[0]
        i = 1
        while w.degree > 0:
            y = poly_gcd_mod_p(w, g) if not g.is_one else w._like((1,))
            fac = w.divmod(y)[0]
            if fac.degree > 0:
                out.append((fac.monic(), i * e))
            w = y
            g = g.divmod(y)[0]
            i += 1
        f = g
    return out


def _distinct_degree(f: ModPoly, p: int) -> list[tuple[int, ModPoly]]:
    out = []
    x = ModPoly(p, (0, 1))
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f.degree, f))
            break
        h = h.pow_mod(p, f)
        g = poly_gcd_mod_p(f, h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f.divmod(g)[0]
            h = h.divmod(f)[1]
    return out


def _equal_degree(f: ModPoly, d: int, p: int, rng: random.Random) -> list[ModPoly]:
    if f.degree == d:
        return [f.monic()]
    n = f.degree
    while True:
        t = ModPoly(p, [rng.randrange(p) for _ in range(n)] + [1])
        if p == 2:
            # trace map over F_{2^d}
            g = t
            acc = t
            for _ in range(d - 1):
                g = g.pow_mod(2, f)
                acc = (acc + g).divmod(f)[1]
            cand = acc
        else:
            cand = t.pow_mod((p ** d - 1) // 2, f) - ModPoly(p, (1,))
        g = poly_gcd_mod_p(f, cand) if not cand.is_zero else f._like((1,))
        if 0 < g.degree < f.degree:
            return sorted(
                _equal_degree(g, d, p, rng) + _equal_degree(f.divmod(g)[0], d, p, rng),
                key=lambda h: h.coeffs,
            )


# ---------------------------------------------------------------------------
# Hensel lifting (pairwise-coprime parts)

def hensel_lift(f: IntPoly, parts: list[ModPoly], p: int, k: int) -> list[ModPoly]:
    """Lift a coprime factorization of f mod p to a factorization mod p^k.

    Preconditions: f monic, parts monic, pairwise coprime mod p, and their
    product congruent to f mod p.  Output parts are monic mod p^k, reduce to
    the inputs mod p, and multiply to f mod p^k.
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if not f.is_monic:
        raise InvalidInputError("hensel_lift requires monic f")
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    parts = [q.reduce_to(p) if q.modulus != p else q for q in parts]
    for q in parts:
        if not q.is_monic:
            raise InvalidInputError("all parts must be monic")
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if poly_gcd_mod_p(parts[i], parts[j]).degree > 0:
                raise NotCoprimeError(
                    f"parts {parts[i]} and {parts[j]} share a factor mod {p}"
                )
    prod = ModPoly(p, (1,))
    for q in parts:
        prod = prod * q
    fbar = f.reduce_mod(p)
    if prod != fbar:
        # f = (prod) * rest with rest sharing a factor means a part was listed
        # with too low a multiplicity: that is a coprimality failure, not a typo
        quo, rem = fbar.divmod(prod)
        if rem.is_zero and any(
            poly_gcd_mod_p(quo, q).degree > 0 for q in parts if quo.degree > 0
        ):
            raise NotCoprimeError("a part divides f mod p with higher multiplicity")
        raise InvalidInputError("product of parts does not equal f mod p")
    if len(parts) == 1:
        return [ModPoly(p ** k, f.coeffs)]
    # Bezout multipliers: lam[i] * prod_{l != i} parts[l] = 1 mod parts[i]
    lams = []
    for i, q in enumerate(parts):
        rest = ModPoly(p, (1,))
        for j, r in enumerate(parts):
            if j != i:
                rest = (rest * r).divmod(q)[1]
        g, u, _ = poly_xgcd_mod_p(rest, q)
        if not g.is_one:
            raise NotCoprimeError("parts are not pairwise coprime mod p")
        lams.append(u)
    lifted = [list(q.coeffs) for q in parts]
    for j in range(1, k):
        pj = p ** j
        mod_next = pj * p
        total = (1,)
        for c in lifted:
            total = _mul(total, tuple(c))
        err = _sub(f.coeffs, total)
        e_over = ModPoly(p, [c // pj for c in err])
        if e_over.is_zero:
            continue
        for i, q in enumerate(parts):
            delta = (lams[i] * e_over).divmod(q)[1]
            cur = lifted[i]
            add = [pj * c for c in delta.coeffs]
            for idx, v in enumerate(add):
                if idx < len(cur):
                    cur[idx] = (cur[idx] + v) % mod_next
                else:
                    cur.append(v % mod_next)
        lifted = [[c % mod_next for c in cs] for cs in lifted]
    pk = p ** k
    return [ModPoly(pk, cs) for cs in lifted]
