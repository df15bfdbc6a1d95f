"""Maximal order of Q[x]/(T) via sympy, with workarounds and self-checks.

sympy's round_two mishandles some fields (its Dedekind first-enlargement can
produce a lattice of the wrong index, which then poisons later primes), so we
run the Dedekind criterion step ourselves, drive sympy's second enlargement
per prime, and sum the p-maximal orders.  The result is verified: it must be
a ring containing 1 and theta, and its index must square-divide disc(T).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from sympy import Poly, ZZ
from sympy.polys.numberfields.basis import (
    _apply_Dedekind_criterion,
    _second_enlargement,
    extract_fundamental_discriminant,
)
from sympy.polys.matrices import DomainMatrix
from sympy.polys.numberfields.modules import PowerBasis


def _xgcd(a, b):
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def hnf_rows(rows):
    """Hermite basis of the row lattice: echelon, positive pivots, entries
    above each pivot reduced into [0, pivot)."""
    pivots: dict[int, list[int]] = {}
    for v in rows:
        v = list(v)
        while True:
            pc = next((i for i, a in enumerate(v) if a), None)
            if pc is None:
                break
            if pc not in pivots:
                pivots[pc] = [-a for a in v] if v[pc] < 0 else v
                break
            b = pivots[pc]
            g, u, w = _xgcd(b[pc], v[pc])
            nb = [u * bi + w * vi for bi, vi in zip(b, v)]
            nv = [(b[pc] // g) * vi - (v[pc] // g) * bi for bi, vi in zip(b, v)]
            pivots[pc] = nb
            v = nv
    cols = sorted(pivots)
    basis = [pivots[c] for c in cols]
    for i in reversed(range(len(basis))):
        pc = cols[i]
        for k in range(i):
            q = basis[k][pc] // basis[i][pc]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return basis


def _red_mod_T(coeffs_leadfirst, Tc, n):
    c = list(coeffs_leadfirst)
    while len(c) > n:
        lead = c[0]
        if lead:
            for i in range(n + 1):
                c[i] -= lead * Tc[i]
        c.pop(0)
    if len(c) < n:
        c = [0] * (n - len(c)) + c
    return c


def _unit_rows(n):
    return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]


def _dedekind_first_enlargement(T, p):
    """(m, Fraction rows of Z[t] + (U(t)/p) Z[t], constant-first)."""
    x = T.gen
    n = T.degree()
    Tb = Poly(T, modulus=p)
    _, fl = Tb.factor_list()
    gb = Poly(1, x, modulus=p)
    for t, _ in fl:
        gb *= t
    hb = Tb // gb
    g = Poly(gb, domain=ZZ)
    h = Poly(hb, domain=ZZ)
    f = (g * h - T) // p
    fb = Poly(f, modulus=p)
    Zb = fb.gcd(gb).gcd(hb)
    m = Zb.degree()
    if m == 0:
        return 0, _unit_rows(n)
    Ub = Tb // Zb
    U = Poly(Ub, domain=ZZ)
    Tc = [int(c) for c in T.all_coeffs()]
    Uc = [int(c) for c in U.all_coeffs()]
    rows = _unit_rows(n)
    for j in range(n):
        r = _red_mod_T(Uc + [0] * j, Tc, n)
        rows.append([Fraction(c, p) for c in reversed(r)])
    return m, rows


def _lattice_hnf(rows):
    den = 1
    for v in rows:
        for c in v:
            den = lcm(den, c.denominator)
    return den, hnf_rows([[int(c * den) for c in v] for v in rows])


def _lattice_index(den, H, n):
    det = 1
    for r in H:
        det *= r[next(i for i, a in enumerate(r) if a)]
    num, d = den ** n, abs(det)
    assert num % d == 0
    return num // d


def _to_sympy_submodule(T, den, H):
    n = T.degree()
    pb = PowerBasis(T)
    M = DomainMatrix(
        [[ZZ(int(H[j][i])) for j in range(len(H))] for i in range(n)], (n, len(H)), ZZ
    )
    return pb.submodule_from_matrix(M, denom=den)


def triangular_basis(den, H, n):
    """LMFDB-style triangular basis over denominator den: generator j has its
    top coordinate at theta^j, positive, with lower coordinates reduced."""
    rev = [list(reversed(r)) for r in H]
    rows = [list(reversed(r)) for r in hnf_rows(rev)]

    def top(r):
        return max(i for i, a in enumerate(r) if a)

    rows.sort(key=top)
    assert [top(r) for r in rows] == list(range(n)), "basis not triangular"
    rows = [[-a for a in r] if r[top(r)] < 0 else r for r in rows]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            q = rows[j][i] // rows[i][i]
            if q:
                rows[j] = [a - q * b for a, b in zip(rows[j], rows[i])]
    return rows


def maximal_order(T):
    """(den, triangular integer rows, dK, index) for Q[x]/(T)."""
    n = T.degree()
    D = int(T.discriminant())
    _, F = extract_fundamental_discriminant(D)
    all_rows = _unit_rows(n)
    for p, e in sorted((int(p), int(e)) for p, e in F.items()):
        m, rows = _dedekind_first_enlargement(T, p)
        if m == 0:
            continue
        if e > m:
            den_p, H_p = _lattice_hnf(rows)
            Hs = _to_sympy_submodule(T, den_p, triangular_basis(den_p, H_p, n))
            q = p
            while q < n:
                q *= p
            H1, _ = _second_enlargement(Hs, p, q)
            while H1 != Hs:
                Hs = H1
                H1, _ = _second_enlargement(Hs, p, q)
            dd = int(Hs.denom)
            M = Hs.matrix.to_Matrix()
            rows = [
                [Fraction(int(M[i, j]), dd) for i in range(n)] for j in range(M.cols)
            ]
        all_rows.extend(rows)
    den, H = _lattice_hnf(all_rows)
    idx = _lattice_index(den, H, n)
    assert D % (idx * idx) == 0, "index does not square-divide disc"
    dK = D // (idx * idx)
    _verify_ring(T, den, H)  # membership test needs leftmost-pivot echelon rows
    tri = triangular_basis(den, H, n)
    det = 1
    for j in range(n):
        det *= tri[j][j]
    assert den ** n % abs(det) == 0 and den ** n // abs(det) == idx, \
        "triangular rewrite changed the lattice"
    return den, tri, dK, idx


def _verify_ring(T, den, H):
    n = T.degree()
    Tc = [int(c) for c in T.all_coeffs()]
    basis = [[Fraction(c, den) for c in r] for r in H]

    def in_lattice(vec):
        w = [c * den for c in vec]
        for r in H:
            pc = next(i for i, a in enumerate(r) if a)
            if w[pc] != 0:
                q = Fraction(w[pc], r[pc])
                if q.denominator != 1:
                    return False
                w = [a - q * b for a, b in zip(w, r)]
        return all(a == 0 for a in w)

    def mul(u, v):
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        prod[i + j] += a * b
        return list(reversed(_red_mod_T(list(reversed(prod)), Tc, n)))

    one = [Fraction(1)] + [Fraction(0)] * (n - 1)
    theta = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2)
    assert in_lattice(one) and in_lattice(theta), "order misses 1 or theta"
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            assert in_lattice(mul(basis[i], basis[j])), ("not closed", i, j)
