"""Fixture documents and reference orderings for idealorder, CAS-derived.

Everything here is computed independently of the main library: maximal orders
through sympy (see maxorder), p-adic factors through the unramified-extension
splitter (see localfield), prime data (e, f, beta, tau) through resultant
valuations, and the reference orderings straight from the definitions.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from pathlib import Path

from sympy import Poly, Symbol

from .localfield import CasError, factor_list_mod_p, padic_factors, vp
from .maxorder import maximal_order

X = Symbol("x")

WORK_PREC = 24
CHECK_PREC = 40
REFERENCE_MAX_NORM = 2000
REFERENCE_PRIME_BOUND = 100

# the shipped fields; label -> (file stem, coefficients constant-first, options)
KNOWN_FIELDS = {
    "3.1.503.1": ("dedekind-cubic", [8, 2, -1, 1], {
        "display_betas": {2: [(3, Fraction(1, 2), Fraction(1, 2)), (3, 1, 0),
                            (0, Fraction(-1, 2), Fraction(1, 2))]},
        "lmfdb_disc": -503,
    }),
    "10.10.24952891341003125.1": (
        "degree-ten",
        [79, 111, -1631, 2343, 44, -1080, 242, 120, -35, -3, 1],
        {"lmfdb_disc": 5 ** 5 * 41 ** 8},
    ),
    "x4.2x2.x.4": ("field-3-2", [4, 1, 2, 0, 1], {}),
    "2.0.4.1": ("gaussian", [1, 0, 1], {"lmfdb_disc": -4}),
    "2.0.3.1": ("eisenstein", [1, -1, 1], {"lmfdb_disc": -3}),
}


# ---------------------------------------------------------------------------
# exact integer resultant (Bareiss) and tiny field arithmetic

def resultant(fc, gc):
    """Res of two integer polynomials given constant-first."""
    f = list(fc)
    g = list(gc)
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    n, m = len(f) - 1, len(g) - 1
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    size = n + m
    rows = []
    fl = list(reversed(f))
    gl = list(reversed(g))
    for i in range(m):
        rows.append([0] * i + fl + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gl + [0] * (size - m - 1 - i))
    sign, prev = 1, 1
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



def res_valuation_mod(h, b, p, S):
    """v_p(Res(h, b)) computed mod p^S as the valuation of det(mult-by-b) on
    Z[x]/(h, p^S); None when the determinant sits too deep to trust."""
    from .localfield import pdivmod_monic

    P = p ** S
    d = len(h) - 1
    bred = pdivmod_monic([c % P for c in b], h, P)[1]
    cols = []
    cur = list(bred)
    for _ in range(d):
        cols.append(cur + [0] * (d - len(cur)))
        cur = pdivmod_monic([0] + cur, h, P)[1]
    M = [list(col) for col in cols]
    total = 0
    for k in range(d):
        best = None
        for i in range(k, d):
            for j in range(k, d):
                x = M[i][j]
                if x:
                    v = vp(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None or total + best[0] >= S - 4:
            return None
        v, bi, bj = best
        M[k], M[bi] = M[bi], M[k]
        for row in M:
            row[k], row[bj] = row[bj], row[k]
        total += v
        pv = p ** v
        inv = pow((M[k][k] // pv) % P, -1, P)
        for i in range(k + 1, d):
            x = M[i][k]
            if x:
                f = (x // pv) * inv % P
                for j in range(k, d):
                    M[i][j] = (M[i][j] - f * M[k][j]) % P
    return total


class FieldArith:
    """Power-basis arithmetic for Q[x]/(g), exact rationals."""

    def __init__(self, coeffs, basis_rows=None):
        self.g = [int(c) for c in coeffs]
        self.n = len(coeffs) - 1
        table = []
        prev = [-c for c in self.g[:-1]]
        table.append(list(prev))
        for _ in range(self.n - 2):
            nxt = [0] + prev[:-1]
            lead = prev[-1]
            if lead:
                for i in range(self.n):
                    nxt[i] -= lead * self.g[i]
            table.append(nxt)
            prev = nxt
        self.table = table
        self.basis = basis_rows or [
            [Fraction(int(i == j)) for i in range(self.n)] for j in range(self.n)
        ]

    def one(self):
        return tuple([Fraction(1)] + [Fraction(0)] * (self.n - 1))

    def mul(self, x, y):
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        out = prod[:n]
        for j in range(n, 2 * n - 1):
            c = prod[j]
            if c:
                for i, t in enumerate(self.table[j - n]):
                    out[i] += c * t
        return tuple(out)

    def pow(self, x, e):
        acc = self.one()
        base = x
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def scale(self, c, x):
        c = Fraction(c)
        return tuple(c * a for a in x)

    def from_int_poly(self, coeffs):
        out = [Fraction(0)] * self.n
        for j, c in enumerate(coeffs):
            if c == 0:
                continue
            if j < self.n:
                out[j] += c
            else:
                for i, t in enumerate(self.table[j - self.n]):
                    out[i] += c * t
        return tuple(out)


# ---------------------------------------------------------------------------
# local valuation data per (field, p): factors plus resultant-based profiles

class LocalData:
    def __init__(self, K: FieldArith, p: int):
        self.K = K
        self.p = p
        hi = padic_factors(K.g, p, CHECK_PREC)
        pw = p ** WORK_PREC
        hi.sort(key=lambda h: (len(h) - 1, tuple(c % pw for c in h[:-1])))
        self.factors_check = hi
        self.r = len(hi)
        self.degs = [len(h) - 1 for h in hi]

    def factor_at(self, j, S):
        ps = self.p ** S
        h = self.factors_check[j]
        return [c % ps for c in h[:-1]] + [1]

    def raw_vals(self, coords):
        """(f_j * w_j(x), denominator p-exponent) per factor, or None."""
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coords]
        dv = vp(den, self.p) or 0
        out = []
        return self._raw_from_ints(ints, dv)

    def raw_val_single(self, j, coords):
        """One factor's (f_j * w_j(x), dv), or None; cheap pre-filter."""
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coords]
        dv = vp(den, self.p) or 0
        vals = [
            res_valuation_mod(self.factor_at(j, S), ints, self.p, S)
            for S in (WORK_PREC, CHECK_PREC)
        ]
        if vals[0] != vals[1] or vals[0] is None:
            return None
        return (vals[0], dv)

    def _raw_from_ints(self, ints, dv):
        out = []
        for j in range(self.r):
            vals = [
                res_valuation_mod(self.factor_at(j, S), ints, self.p, S)
                for S in (WORK_PREC, CHECK_PREC)
            ]
            if vals[0] != vals[1] or vals[0] is None:
                out.append(None)
            else:
                out.append((vals[0], dv))
        return out


def decompose_enumerate(K: FieldArith, p: int, dK: int, loc: LocalData):
    """Unique (e, f) per factor from degrees, residue images, and v_p(dK)."""
    mods = factor_list_mod_p(K.g, p)
    opts = []
    for h in loc.factors_check:
        hm = [c % p for c in h]
        f0 = None
        for phi, _ in mods:
            from .localfield import pdivmod_monic, trim

            if not trim(pdivmod_monic(hm, phi, p)[1]):
                f0 = len(phi) - 1
                break
        if f0 is None:
            raise CasError(f"no mod-{p} image for a factor")
        d = len(h) - 1
        cand = []
        for f in range(f0, d + 1, f0):
            if d % f == 0:
                e = d // f
                wild = e % p == 0
                lo = (e - 1) + (1 if wild else 0)
                hi = (e - 1) + (e * (vp(e, p) or 0) + e - 1 if wild else 0)
                cand.append((e, f, lo, hi))
        opts.append(cand)
    target = vp(abs(dK), p) or 0
    sols = []

    def rec(i, lo_acc, hi_acc, picked):
        if i == len(opts):
            if lo_acc <= target <= hi_acc:
                sols.append((lo_acc, hi_acc, list(picked)))
            return
        for e, f, lo, hi in opts[i]:
            rec(i + 1, lo_acc + lo * f, hi_acc + hi * f, picked + [(e, f)])

    rec(0, 0, 0, [])
    exact = [s for lo, hi, s in sols if lo == target == hi]
    if len(exact) == 1:
        out = exact[0]
    elif len(sols) == 1:
        out = sols[0][2]
    else:
        raise CasError(f"ambiguous (e, f) assignment above {p}: {sols}")
    if sum(e * f for e, f in out) != K.n:
        raise CasError(f"(e, f) assignment above {p} misses the degree")
    return out


def w_profile(loc: LocalData, ef, coords):
    raws = loc.raw_vals(coords)
    prof = []
    for j, raw in enumerate(raws):
        e, f = ef[j]
        if raw is None:
            prof.append(None)
            continue
        v, dv = raw
        if v % f:
            raise CasError("raw valuation not divisible by the residue degree")
        prof.append(v // f - e * dv)
    return prof


def find_beta(K: FieldArith, loc: LocalData, ef, j, rng):
    """Element with w_j = 1 and w_i = 0 elsewhere (exact profile)."""
    n = K.n
    basisF = [list(r) for r in K.basis]

    ej, fj = ef[j]

    def check(coords):
        # cheap pre-filter: the target factor must sit at exactly w_j = 1
        raw = loc.raw_val_single(j, coords)
        if raw is None:
            return False
        v, dv = raw
        if v % fj or v // fj - ej * dv != 1:
            return False
        prof = w_profile(loc, ef, coords)
        if any(x is None for x in prof):
            return False
        return prof[j] == 1 and all(x == 0 for i, x in enumerate(prof) if i != j)

    def coords_from(c):
        return tuple(
            sum(Fraction(ci) * basisF[i][t] for i, ci in enumerate(c)) for t in range(n)
        )

    for S in (1, 2, 3):
        base = K.from_int_poly(loc.factor_at(j, S))
        shifts = [tuple(Fraction(0) for _ in range(n))]
        for i in range(n):
            for t in (1, 2, 3):
                shifts.append(tuple(Fraction(loc.p * t) * x for x in basisF[i]))
        for sh in shifts:
            coords = tuple(a + b for a, b in zip(base, sh))
            if check(coords):
                return coords
    box = min(2 * loc.p, 6)
    if box ** n <= 60000:
        for c in product(range(box), repeat=n):
            coords = coords_from(c)
            if check(coords):
                return coords
    for _ in range(60000):
        c = [rng.randrange(0, min(loc.p, 10)) for _ in range(n)]
        coords = coords_from(c)
        if check(coords):
            return coords
    raise CasError(f"beta search failed for p={loc.p} factor {j}")


# ---------------------------------------------------------------------------
# fixture document

def trial_factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def build_field_doc(label, coeffs, display_betas=None, lmfdb_disc=None):
    """The fixture document plus the per-p canonical prime data needed for
    reference orderings."""
    T = Poly(sum(int(c) * X ** i for i, c in enumerate(coeffs)), X)
    if not T.is_irreducible:
        raise CasError("defining polynomial is not irreducible")
    den, rows, dK, _ = maximal_order(T)
    n = T.degree()
    basis = [[Fraction(int(c), den) for c in r] for r in rows]
    if lmfdb_disc is not None and dK != lmfdb_disc:
        raise CasError(f"computed disc {dK} != expected {lmfdb_disc}")
    K = FieldArith(coeffs, basis)
    disc_g = int(T.discriminant())

    rng = random.Random(20260810)
    primes_doc = {}
    local = {}
    for p in sorted(trial_factorize(abs(disc_g))):
        loc = LocalData(K, p)
        ef = decompose_enumerate(K, p, dK, loc)
        local[p] = (loc, ef)
        betas = [None] * loc.r
        display = [None] * loc.r
        for coords in (display_betas or {}).get(p, []):
            cand = tuple(Fraction(c) for c in coords)
            prof = w_profile(loc, ef, cand)
            hits = [i for i, v in enumerate(prof) if v is None or v >= 1]
            if len(hits) != 1 or any(v != 0 for i, v in enumerate(prof) if i != hits[0]):
                raise CasError(f"configured beta has a bad profile at p={p}: {prof}")
            jj = hits[0]
            display[jj] = cand
            if prof[jj] == 1:
                betas[jj] = cand
        for j in range(loc.r):
            if betas[j] is None:
                betas[j] = find_beta(K, loc, ef, j, rng)
            if display[j] is None:
                display[j] = betas[j]
        entries = []
        for j in range(loc.r):
            e, f = ef[j]
            u = K.one()
            for i in range(loc.r):
                power = e - 1 if i == j else ef[i][0]
                u = K.mul(u, K.pow(betas[i], power))
            tau = K.scale(Fraction(1, p), u)
            prof = w_profile(loc, ef, tau)
            if prof[j] != -1 or any(v != 0 for i, v in enumerate(prof) if i != j):
                raise CasError(f"tau profile wrong at p={p} factor {j}: {prof}")
            entries.append(
                {
                    "e": e,
                    "f": f,
                    "beta": [str(c) for c in display[j]],
                    "tau": [str(c) for c in tau],
                }
            )
        pco = p ** 8
        store = sorted(tuple(c % pco for c in h[:-1]) for h in loc.factors_check)
        entries[0]["padic_factors"] = {
            "precision_k": 8,
            "coeffs_mod_pk": [list(r) for r in store],
        }
        if len(entries) > 1:
            entries = entries[1:] + entries[:1]
        primes_doc[str(p)] = entries

    doc = {
        "label": label,
        "degree": n,
        "poly": [int(c) for c in coeffs],
        "field_disc": dK,
        "integral_basis": [[str(c) for c in row] for row in basis],
        "primes": primes_doc,
    }
    return doc, K, local


def write_fixture(doc, path: Path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------------------
# reference orderings (straight from the definitions, brute force)

def digit_key(coeffs, p, k):
    digits = []
    cs = list(coeffs)
    for _ in range(k):
        digits.extend(c % p for c in cs)
        cs = [c // p for c in cs]
    return tuple(digits)


def canonical_primes(K: FieldArith, doc, local, p):
    """[(label norm, label index, e, f, beta coords)] in canonical order."""
    if p in local:
        loc, ef = local[p]
        # strict factor order at escalating precision
        k = 2
        while True:
            keyed = sorted(
                (len(loc.factor_at(j, k)) - 1, digit_key(loc.factor_at(j, k)[:-1], p, k), j)
                for j in range(loc.r)
            )
            if len({(d, dk) for d, dk, _ in keyed}) == loc.r:
                break
            k += 1
            if k > 64:
                raise CasError(f"factor order not strict below precision 64 at p={p}")
        pos = {j: i for i, (_, _, j) in enumerate(keyed)}
        order = sorted(range(loc.r), key=lambda j: (p ** ef[j][1], ef[j][0], pos[j]))
        entries = doc["primes"][str(p)]
        # entries were rotated on write; rebuild the factor-indexed list
        unrot = entries[-1:] + entries[:-1] if len(entries) > 1 else entries
        out = []
        counts = {}
        for j in order:
            e, f = ef[j]
            norm = p ** f
            counts[norm] = counts.get(norm, 0) + 1
            ent = unrot[j]
            out.append((norm, counts[norm], e, f, tuple(ent["beta"])))
        return out
    # Dedekind-Kummer route
    mods = factor_list_mod_p(K.g, p)
    if any(m > 1 for _, m in mods):
        raise CasError(f"p={p} divides disc(g) but carries no fixture block")
    out = []
    counts = {}
    for phi, _ in mods:  # already sorted by (degree, coeffs)
        f = len(phi) - 1
        norm = p ** f
        counts[norm] = counts.get(norm, 0) + 1
        beta = K.from_int_poly(phi)
        out.append((norm, counts[norm], 1, f, tuple(str(c) for c in beta)))
    return out


def reference_primes_text(K, doc, local, prime_bound=REFERENCE_PRIME_BOUND):
    disc_ps = sorted(local)
    ps = sorted(set(disc_ps) | set(_primes_upto(prime_bound)))
    lines = []
    for p in ps:
        lines.append(f"p {p}")
        for norm, idx, e, f, beta in canonical_primes(K, doc, local, p):
            coords = "(" + ",".join(beta) + ")"
            lines.append(f"{norm}.{idx} p={p} e={e} f={f} beta={coords}")
    return "\n".join(lines) + "\n"


def _primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for q in range(2, n + 1):
        if sieve[q]:
            out.append(q)
            for m in range(q * q, n + 1, q):
                sieve[m] = False
    return out


def reference_ideals_text(K, doc, local, max_norm=REFERENCE_MAX_NORM):
    profiles = {}
    labels = {}

    def profile(p):
        if p not in profiles:
            prim = canonical_primes(K, doc, local, p)
            profiles[p] = [(e, f) for _, _, e, f, _ in prim]
            labels[p] = [(norm, idx) for norm, idx, _, _, _ in prim]
        return profiles[p]

    lines = []
    for N in range(1, max_norm + 1):
        fac = trial_factorize(N)
        per_p = []
        empty = False
        for p, a in sorted(fac.items()):
            prof = profile(p)
            vecs = _vectors(prof, a)
            if not vecs:
                empty = True
                break
            vecs.sort(key=lambda v: (sum(v), tuple(-c for c in v)))
            per_p.append((p, vecs))
        if empty:
            continue
        if N == 1:
            lines.append("1.1 = (1)")
            continue
        idx = 0
        for combo in product(*[vs for _, vs in per_p]):
            idx += 1
            terms = []
            for (p, _), v in zip(per_p, combo):
                for pos, c in enumerate(v):
                    if c:
                        norm, i = labels[p][pos]
                        terms.append((norm, i, c))
            terms.sort(key=lambda t: (t[0], t[1]))
            fact = "*".join(f"{a}.{b}" + (f"^{c}" if c > 1 else "") for a, b, c in terms)
            lines.append(f"{N}.{idx} = {fact}")
    return "\n".join(lines) + "\n"


def _vectors(prof, a):
    fvec = [f for _, f in prof]
    out = []

    def rec(i, rem, acc):
        if i == len(fvec):
            if rem == 0:
                out.append(tuple(acc))
            return
        for c in range(rem // fvec[i] + 1):
            rec(i + 1, rem - c * fvec[i], acc + [c])

    rec(0, a, [])
    return out


# ---------------------------------------------------------------------------

def generate_bundle(spec: str, out_dir: Path, max_norm=REFERENCE_MAX_NORM,
                    prime_bound=REFERENCE_PRIME_BOUND):
    """Full ReferenceBundle for one field: fixture JSON + reference files."""
    if spec in KNOWN_FIELDS:
        stem, coeffs, opts = KNOWN_FIELDS[spec]
        label = spec
    else:
        coeffs = _parse_poly(spec)
        stem = "field-" + "_".join(str(c) for c in coeffs)
        label = stem
        opts = {}
    doc, K, local = build_field_doc(label, coeffs, **opts)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_fixture(doc, out_dir / f"{stem}.json")
    refdir = out_dir / "references" / stem
    refdir.mkdir(parents=True, exist_ok=True)
    (refdir / "primes.txt").write_text(
        reference_primes_text(K, doc, local, prime_bound), encoding="utf-8"
    )
    (refdir / "ideals.txt").write_text(
        reference_ideals_text(K, doc, local, max_norm), encoding="utf-8"
    )
    return stem


def _parse_poly(text):
    s = text.strip()
    if "," in s or s.replace("-", "").replace(" ", "").isdigit():
        return [int(t) for t in s.replace(",", " ").split()]
    T = Poly(s.replace("^", "**"), X)
    return [int(c) for c in reversed(T.all_coeffs())]
