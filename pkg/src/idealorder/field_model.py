"""Number fields with a fixed defining polynomial and integral basis.

A `NumberField` never changes after construction: the defining polynomial g,
the generator alpha (the class of X), the integral basis, and the field
discriminant are all pinned by the fixture that created it.  Element
arithmetic happens in the power basis of alpha with exact rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import InvalidInputError, PrecisionExhausted, ValidationError
from .exact_arith import IntPoly, Rational, discriminant, is_prime

T2_START_BITS = 64
T2_CAP_BITS = 4096


# ---------------------------------------------------------------------------
# exact linear algebra over Fraction (n is tiny: field degrees)

def mat_inv(rows):
    """Inverse of a square Fraction matrix via Gauss-Jordan; None if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


def mat_det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def row_times_mat(vec, rows):
    n = len(rows)
    return tuple(sum(vec[i] * rows[i][j] for i in range(n)) for j in range(n))


# ---------------------------------------------------------------------------
# field elements

@dataclass(frozen=True)
class FieldElement:
    """Coordinates in the power basis 1, alpha, ..., alpha^(n-1)."""

    coords: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class NumberField:
    """K = Q[X]/(g) with a pinned integral basis (rows, power-basis coords)."""

    poly: IntPoly
    basis: tuple[tuple[Fraction, ...], ...]
    field_disc: int | None
    label: str | None
    basis_inv: tuple[tuple[Fraction, ...], ...]
    power_table: tuple[tuple[int, ...], ...]  # alpha^n .. alpha^(2n-2)
    disc_poly: int

    @classmethod
    def create(cls, poly: IntPoly, basis=None, field_disc=None, label=None) -> "NumberField":
        if not poly.is_monic or poly.degree < 1:
            raise InvalidInputError("defining polynomial must be monic of degree >= 1")
        n = poly.degree
        disc_g = discriminant(poly)
        if disc_g == 0:
            raise InvalidInputError("defining polynomial is not squarefree")
        if basis is None:
            basis = tuple(
                tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)
            )
            if field_disc is None:
                field_disc = None  # unknown in self-contained mode
        basis = tuple(tuple(Fraction(c) for c in row) for row in basis)
        inv = mat_inv([list(r) for r in basis])
        if inv is None:
            raise InvalidInputError("integral basis matrix is singular")
        # alpha^j for j = n .. 2n-2, integer coords since g is monic
        table = []
        prev = [-c for c in poly.coeffs[:-1]]
        table.append(tuple(prev))
        for _ in range(n - 2):
            nxt = [0] + prev[:-1]
            lead = prev[-1]
            if lead:
                for i in range(n):
                    nxt[i] -= lead * poly.coeffs[i]
            table.append(tuple(nxt))
            prev = nxt
        return cls(
            poly=poly,
            basis=basis,
            field_disc=field_disc,
            label=label,
            basis_inv=tuple(tuple(r) for r in inv),
            power_table=tuple(table),
            disc_poly=disc_g,
        )

    @property
    def degree(self) -> int:
        return self.poly.degree

    # -- element constructors -------------------------------------------------

    def element(self, coords) -> FieldElement:
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise InvalidInputError(
                f"expected {self.degree} coordinates, got {len(coords)}"
            )
        return FieldElement(coords)

    def zero(self) -> FieldElement:
        return self.element([0] * self.degree)

    def one(self) -> FieldElement:
        return self.element([1] + [0] * (self.degree - 1))

    def gen(self) -> FieldElement:
        if self.degree == 1:
            return self.element([-self.poly.coeffs[0]])
        return self.element([0, 1] + [0] * (self.degree - 2))

    def from_int_poly(self, b: IntPoly) -> FieldElement:
        """b(alpha) for an integer polynomial b of any degree."""
        coords = [Fraction(0)] * self.degree
        for j, c in enumerate(b.coeffs):
            if c == 0:
                continue
            if j < self.degree:
                coords[j] += c
            else:
                for i, t in enumerate(self.power_table[j - self.degree]):
                    coords[i] += c * t
        return FieldElement(tuple(coords))

    # -- arithmetic ------------------------------------------------------------

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple(a + b for a, b in zip(x.coords, y.coords)))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple(a - b for a, b in zip(x.coords, y.coords)))

    def scale(self, c, x: FieldElement) -> FieldElement:
        c = Fraction(c)
        return FieldElement(tuple(c * a for a in x.coords))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(x.coords):
            if a:
                for j, b in enumerate(y.coords):
                    if b:
                        prod[i + j] += a * b
        coords = prod[:n]
        for j in range(n, 2 * n - 1):
            c = prod[j]
            if c:
                for i, t in enumerate(self.power_table[j - n]):
                    coords[i] += c * t
        return FieldElement(tuple(coords))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        acc = self.one()
        base = x
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    # -- integral-basis coordinates ---------------------------------------------

    def coords_in_integral_basis(self, x: FieldElement) -> tuple[Fraction, ...]:
        return row_times_mat(x.coords, [list(r) for r in self.basis_inv])

    def is_p_integral(self, x: FieldElement, p: int) -> bool:
        """True iff x lies in the localization of the maximal order at p."""
        return all(c.denominator % p != 0 for c in self.coords_in_integral_basis(x))


def element_mul(x: FieldElement, y: FieldElement, K: NumberField) -> FieldElement:
    return K.mul(x, y)


def coords_in_integral_basis(x: FieldElement, K: NumberField):
    return K.coords_in_integral_basis(x)


# ---------------------------------------------------------------------------
# reduced defining polynomial order (T2, |disc|, S-vector)

@dataclass(frozen=True)
class SVector:
    """(|a_1|, a_1, ..., |a_n|, a_n) with a_i the coefficient of X^(n-i)."""

    entries: tuple[int, ...]


def s_vector(P: IntPoly) -> SVector:
    if not P.is_monic:
        raise InvalidInputError("s_vector requires a monic polynomial")
    entries = []
    for i in range(P.degree - 1, -1, -1):
        a = P.coeffs[i]
        entries.extend((abs(a), a))
    return SVector(tuple(entries))


@dataclass(frozen=True)
class T2Interval:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise InvalidInputError("empty T2 interval")

    def separated_from(self, other: "T2Interval"):
        if self.upper < other.lower:
            return -1
        if other.upper < self.lower:
            return 1
        return None


def t2_interval(P: IntPoly, bits: int) -> T2Interval:
    """Enclosure of sum |root|^2 from validated complex root approximations.

    Roots are approximated at the working precision; each approximation r gets
    the radius n*|P(r)/P'(r)|, which always bounds the distance to the nearest
    true root.  If the radii do not separate the approximations the enclosure
    is not trustworthy and we fail so the caller can retry at higher precision.
    """
    n = P.degree
    dP = P.derivative()
    with mpmath.workprec(bits):
        coeffs = [mpmath.mpf(c) for c in reversed(P.coeffs)]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=bits)
        except mpmath.libmp.libhyper.NoConvergence:
            raise PrecisionExhausted(f"root finding did not converge at {bits} bits")
        rads = []
        for r in roots:
            pr = mpmath.polyval(coeffs, r)
            dpr = mpmath.polyval([mpmath.mpf(c) for c in reversed(dP.coeffs)], r)
            if dpr == 0:
                raise PrecisionExhausted("derivative vanished at an approximate root")
            rads.append(n * abs(pr) / abs(dpr))
        for i in range(n):
            for j in range(i + 1, n):
                if abs(roots[i] - roots[j]) <= rads[i] + rads[j]:
                    raise PrecisionExhausted(
                        f"root enclosures overlap at {bits} bits"
                    )
        lo = hi = mpmath.mpf(0)
        for r, rad in zip(roots, rads):
            m = abs(r)
            lo += (m - rad if m > rad else mpmath.mpf(0)) ** 2
            hi += (m + rad) ** 2
        # outward slack for the accumulation rounding above
        slack = mpmath.ldexp(hi + 1, -max(bits - 8, 8))
        lo_f = _mpf_to_fraction(lo - slack)
        hi_f = _mpf_to_fraction(hi + slack)
    return T2Interval(max(lo_f, Fraction(0)), hi_f)


def _mpf_to_fraction(x) -> Fraction:
    num, den = mpmath.libmp.to_rational(mpmath.mpf(x)._mpf_)
    return Fraction(int(num), int(den))


def _t2_exactly_equal(P: IntPoly, Q: IntPoly) -> bool:
    """Certificate for exact T2 equality: identical polys, or mirror images
    Q(X) = (-1)^n P(-X) (same roots up to sign, hence the same moduli)."""
    if P.coeffs == Q.coeffs:
        return True
    n = P.degree
    if n != Q.degree:
        return False
    sign = -1 if n % 2 else 1
    mirrored = tuple(sign * ((-1) ** i) * c for i, c in enumerate(P.coeffs))
    return mirrored == Q.coeffs


def t2_compare(P: IntPoly, Q: IntPoly, cap_bits: int = T2_CAP_BITS) -> int:
    """-1 / 0 / 1 ordering of T2 norms.

    0 means equal: either certified exactly (mirror symmetry), or the
    enclosures still overlap at the precision cap.  The latter is safe for
    selection because the discriminant and S-vector filters still apply to
    everything grouped as T2-equal."""
    if _t2_exactly_equal(P, Q):
        return 0
    bits = T2_START_BITS
    last_error = None
    while bits <= cap_bits:
        try:
            a = t2_interval(P, bits)
            b = t2_interval(Q, bits)
        except PrecisionExhausted as exc:
            last_error = exc
            bits *= 2
            continue
        sep = a.separated_from(b)
        if sep is not None:
            return sep
        bits *= 2
    if last_error is not None:
        # never even produced valid enclosures (pathological input)
        raise PrecisionExhausted(
            f"T2 enclosures unavailable for {P} / {Q} at {cap_bits} bits"
        ) from last_error
    return 0


def reduced_poly_select(candidates, precision_bits: int = T2_CAP_BITS) -> IntPoly:
    """Apply the three selection filters: minimal T2, then minimal |disc|,
    then lexicographically smallest S-vector."""
    return reduced_poly_order(candidates, precision_bits)[0]


def reduced_poly_order(candidates, precision_bits: int = T2_CAP_BITS) -> list[IntPoly]:
    cands = list(candidates)
    if not cands:
        raise InvalidInputError("empty candidate list")
    deg = cands[0].degree
    for P in cands:
        if not P.is_monic or P.degree != deg:
            raise InvalidInputError("candidates must be monic of equal degree")
        if discriminant(P) == 0:
            raise InvalidInputError(f"candidate {P} is not squarefree")
    # classes of (certified or interval-separated) equal T2, ordered
    ordered = sorted(
        cands,
        key=_cmp_key(lambda a, b: t2_compare(a, b, precision_bits)),
    )
    out = []
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and t2_compare(ordered[i], ordered[j + 1], precision_bits) == 0:
            j += 1
        tied = ordered[i:j + 1]
        tied.sort(key=lambda P: (abs(discriminant(P)), s_vector(P).entries))
        out.extend(tied)
        i = j + 1
    return out


def _cmp_key(cmp):
    class _K:
        __slots__ = ("v",)

        def __init__(self, v):
            self.v = v

        def __lt__(self, other):
            return cmp(self.v, other.v) < 0

    return _K


# ---------------------------------------------------------------------------
# fixture documents

@dataclass(frozen=True)
class PrimeBlock:
    """Raw fixture data for one prime above p (order in the file is arbitrary)."""

    p: int
    e: int
    f: int
    beta: FieldElement
    tau: FieldElement | None


@dataclass(frozen=True)
class PadicBlock:
    precision_k: int
    factor_coeffs: tuple[tuple[int, ...], ...]  # constant-first, monic implied


@dataclass(frozen=True)
class FieldFixture:
    field: NumberField
    primes: dict[int, tuple[PrimeBlock, ...]]
    padic: dict[int, PadicBlock]


def _parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise InvalidInputError(f"bad rational {s!r}")


def parse_disc(v) -> int:
    """Accept an integer or a factored string like '-2^2*503'."""
    if isinstance(v, int):
        return v
    s = str(v).strip().replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:]
    total = 1
    for term in s.split("*"):
        if "^" in term:
            b, e = term.split("^")
            total *= int(b) ** int(e)
        else:
            total *= int(term)
    return sign * total


def fixture_checks(doc: dict):
    """Run every fixture invariant; yields (check_name, ok, detail)."""
    label = str(doc.get("label", "<unlabelled>"))

    def fail(name, detail):
        return (name, False, detail)

    required = {"label", "degree", "poly", "field_disc", "integral_basis", "primes"}
    missing = required - set(doc)
    if missing:
        yield fail("schema:keys", f"missing keys {sorted(missing)}")
        return
    yield ("schema:keys", True, "")

    try:
        poly = IntPoly(doc["poly"])
        n = int(doc["degree"])
        disc_field = parse_disc(doc["field_disc"])
        basis_rows = [[_parse_rational(c) for c in row] for row in doc["integral_basis"]]
    except (InvalidInputError, ValueError, TypeError) as exc:
        yield fail("schema:values", str(exc))
        return
    yield ("schema:values", True, "")

    if not poly.is_monic or poly.degree != n:
        yield fail("poly:monic-degree", f"poly degree {poly.degree}, monic={poly.is_monic}")
        return
    yield ("poly:monic-degree", True, "")

    disc_g = discriminant(poly)
    if disc_g == 0:
        yield fail("poly:squarefree", "disc(g) = 0")
        return
    yield ("poly:squarefree", True, "")

    ok_shape = len(basis_rows) == n and all(len(r) == n for r in basis_rows)
    if not ok_shape:
        yield fail("basis:shape", f"expected {n}x{n}")
        return
    yield ("basis:shape", True, "")

    b1_ok = basis_rows[0][0] == 1 and all(c == 0 for c in basis_rows[0][1:])
    yield ("basis:b1-is-1", b1_ok, "" if b1_ok else "first basis element is not 1")

    triangular = all(
        all(basis_rows[j][i] == 0 for i in range(j + 1, n)) and basis_rows[j][j] != 0
        for j in range(n)
    )
    yield ("basis:triangular", triangular, "" if triangular else "not lower-triangular with nonzero diagonal")

    det = mat_det(basis_rows)
    if det == 0:
        yield fail("basis:invertible", "determinant is zero")
        return
    yield ("basis:invertible", True, "")

    disc_ok = det * det * disc_g == disc_field
    yield (
        "basis:disc-compatible",
        disc_ok,
        "" if disc_ok else f"det^2*disc(g) = {det * det * disc_g} != field_disc {disc_field}",
    )
    if not (b1_ok and triangular and disc_ok):
        return

    K = NumberField.create(poly, basis_rows, disc_field, label=label)
    primes = doc.get("primes", {})
    for p_str, entries in sorted(primes.items(), key=lambda kv: int(kv[0])):
        p = int(p_str)
        if not is_prime(p):
            yield fail(f"primes:{p}:prime", f"{p} is not prime")
            continue
        try:
            ef_sum = sum(int(ent["e"]) * int(ent["f"]) for ent in entries)
        except (KeyError, TypeError, ValueError) as exc:
            yield fail(f"primes:{p}:schema", str(exc))
            continue
        ok = ef_sum == n
        yield (f"primes:{p}:sum-ef", ok, "" if ok else f"sum e*f = {ef_sum} != degree {n}")
        if not ok:
            continue
        for idx, ent in enumerate(entries):
            e = int(ent["e"])
            beta = K.element([_parse_rational(c) for c in ent["beta"]])
            tau_raw = ent.get("tau")
            if tau_raw is None:
                ok = disc_g % p != 0
                yield (
                    f"primes:{p}:{idx}:tau-optional",
                    ok,
                    "" if ok else "tau may be omitted only when p does not divide disc(g)",
                )
                continue
            tau = K.element([_parse_rational(c) for c in tau_raw])
            # v(p) = e exactly: p*tau^e stays p-integral, p*tau^(e+1) does not
            t_e = K.pow(tau, e)
            ok = K.is_p_integral(K.scale(p, t_e), p) and not K.is_p_integral(
                K.scale(p, K.mul(t_e, tau)), p
            )
            yield (f"primes:{p}:{idx}:tau-valuation", ok, "" if ok else "v(p) != e under tau")
            ok = K.is_p_integral(K.mul(beta, tau), p) and K.is_p_integral(beta, p)
            yield (f"primes:{p}:{idx}:beta-in-prime", ok, "" if ok else "v(beta) < 1 under tau")
        pad = None
        for ent in entries:
            if ent.get("padic_factors"):
                pad = ent["padic_factors"]
                break
        if pad is not None:
            k = int(pad["precision_k"])
            pk = p ** k
            coeffs = [tuple(int(c) for c in row) for row in pad["coeffs_mod_pk"]]
            ok = all(all(0 <= c < pk for c in row) for row in coeffs)
            yield (f"primes:{p}:padic-range", ok, "" if ok else f"coefficients outside [0, {p}^{k})")
            degs = sum(len(row) for row in coeffs)
            ok = degs == n
            yield (f"primes:{p}:padic-degrees", ok, "" if ok else f"factor degrees sum to {degs} != {n}")
            from .exact_arith import ModPoly

            prod = ModPoly(pk, (1,))
            for row in coeffs:
                prod = prod * ModPoly(pk, row + (1,))
            ok = prod == poly.reduce_mod(pk)
            yield (f"primes:{p}:padic-product", ok, "" if ok else f"product != g mod {p}^{k}")


def load_fixture(source) -> FieldFixture:
    """Parse and fully validate a fixture document (path, JSON text, or dict)."""
    if isinstance(source, dict):
        doc = source
    else:
        s = str(source)
        if s.lstrip().startswith("{"):
            text = s
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(str(source), f"not valid JSON: {exc}") from exc
    label = str(doc.get("label", "<unlabelled>"))
    for name, ok, detail in fixture_checks(doc):
        if not ok:
            raise ValidationError(label, f"{name}: {detail}")
    poly = IntPoly(doc["poly"])
    basis_rows = [[_parse_rational(c) for c in row] for row in doc["integral_basis"]]
    K = NumberField.create(poly, basis_rows, parse_disc(doc["field_disc"]), label=label)
    primes: dict[int, tuple[PrimeBlock, ...]] = {}
    padic: dict[int, PadicBlock] = {}
    for p_str, entries in doc.get("primes", {}).items():
        p = int(p_str)
        blocks = []
        for ent in entries:
            tau_raw = ent.get("tau")
            blocks.append(
                PrimeBlock(
                    p=p,
                    e=int(ent["e"]),
                    f=int(ent["f"]),
                    beta=K.element([_parse_rational(c) for c in ent["beta"]]),
                    tau=None if tau_raw is None else K.element(
                        [_parse_rational(c) for c in tau_raw]
                    ),
                )
            )
            pad = ent.get("padic_factors")
            if pad and p not in padic:
                padic[p] = PadicBlock(
                    precision_k=int(pad["precision_k"]),
                    factor_coeffs=tuple(
                        tuple(int(c) for c in row) for row in pad["coeffs_mod_pk"]
                    ),
                )
        primes[p] = tuple(blocks)
    return FieldFixture(field=K, primes=primes, padic=padic)
