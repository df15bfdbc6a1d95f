"""p-adic factorization of the defining polynomial, CAS-side.

Strategy, independent of the main library's divisor search: lift the
pairwise-coprime mod-p cluster powers with linear Hensel steps, then split a
repeated cluster through the unramified extension W = Z_p[y]/(phi):
its roots, when they exist in W, are found by Hensel root lifting per residue
class and paired off under the Frobenius automorphism.  A cluster whose roots
do not live in W is left whole; ramification bookkeeping happens later
against the field discriminant.

Coverage: repeated clusters of multiplicity 2 (roots in W), plus
multiplicity-m linear-image clusters that split off Z_p-roots.  Anything
richer raises; the shipped fields need nothing more.
"""

from __future__ import annotations

from sympy import Poly, ZZ


class CasError(RuntimeError):
    """The CAS-side computation cannot handle this input; never degrade silently."""


def vp(n: int, p: int):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# polynomial helpers over Z (dense, constant-first int lists)

def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def pmul(a, b, mod=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if mod:
        out = [c % mod for c in out]
    return trim(out)


def padd(a, b, mod=None):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    if mod:
        out = [c % mod for c in out]
    return trim(out)


def psub(a, b, mod=None):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    if mod:
        out = [c % mod for c in out]
    return trim(out)


def pdivmod_monic(a, d, mod):
    """Division by a monic divisor with coefficients mod `mod`."""
    r = [c % mod for c in a]
    dd = len(d) - 1
    q = [0] * max(len(r) - dd, 0)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i] % mod
        if c:
            q[i - dd] = c
            for j, dc in enumerate(d):
                r[i - dd + j] = (r[i - dd + j] - c * dc) % mod
        else:
            r[i] = 0
    return trim(q), trim(r)


def peval(a, x, mod):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % mod
    return acc


def factor_list_mod_p(coeffs, p):
    """sympy-backed factorization over F_p; least-nonnegative coefficients,
    sorted by (degree, coefficient tuple)."""
    from sympy.abc import x

    T = Poly([c % p for c in reversed(coeffs)], x, modulus=p)
    _, fl = T.factor_list()
    out = []
    for fac, mult in fl:
        cs = [int(c) % p for c in reversed(fac.all_coeffs())]
        out.append((cs, int(mult)))
    out.sort(key=lambda t: (len(t[0]), tuple(t[0])))
    return out


# ---------------------------------------------------------------------------
# linear multi-factor Hensel over Z/p^S (coprime parts)

def _poly_xgcd_mod_p(a, b, p):
    def divmod_fp(x, y):
        x = [c % p for c in x]
        y = trim([c % p for c in y])
        inv = pow(y[-1], -1, p)
        q = [0] * max(len(x) - len(y) + 1, 0)
        for i in range(len(x) - 1, len(y) - 2, -1):
            c = x[i] % p
            if c:
                c = c * inv % p
                q[i - len(y) + 1] = c
                for j, yc in enumerate(y):
                    x[i - len(y) + 1 + j] = (x[i - len(y) + 1 + j] - c * yc) % p
            else:
                x[i] = 0
        return trim(q), trim(x)

    r0, r1 = trim([c % p for c in a]), trim([c % p for c in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_fp(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0]


def hensel_coprime(g_coeffs, parts_mod_p, p, S):
    """Lift pairwise-coprime monic parts of g mod p to factors mod p^S."""
    if len(parts_mod_p) == 1:
        return [[c % p ** S for c in g_coeffs]]
    lams = []
    for i, q in enumerate(parts_mod_p):
        rest = [1]
        for j, r in enumerate(parts_mod_p):
            if j != i:
                rest = pdivmod_monic(pmul(rest, r, p), q, p)[1]
        gcd_, u, _ = _poly_xgcd_mod_p(rest, q, p)
        if gcd_ != [1]:
            raise CasError("cluster parts not coprime mod p")
        lams.append(u)
    lifted = [list(q) for q in parts_mod_p]
    for j in range(1, S):
        pj = p ** j
        mod_next = pj * p
        total = [1]
        for c in lifted:
            total = pmul(total, c)
        err = psub(list(g_coeffs), total)
        e_over = trim([(c // pj) % p for c in err])
        if not e_over:
            lifted = [[c % mod_next for c in cs] for cs in lifted]
            continue
        for i, q in enumerate(parts_mod_p):
            delta = pdivmod_monic(pmul(lams[i], e_over, p), q, p)[1]
            cur = lifted[i]
            for idx, v in enumerate(delta):
                cur[idx] = (cur[idx] + pj * v) % mod_next
        lifted = [[c % mod_next for c in cs] for cs in lifted]
    return lifted


# ---------------------------------------------------------------------------
# the unramified extension W = Z_p[y]/(phi), elements as int vectors mod p^S

class W:
    def __init__(self, p, S, phi):
        self.p = p
        self.S = S
        self.mod = p ** S
        self.phi = [c % self.mod for c in phi]  # monic, constant-first
        self.deg = len(phi) - 1

    def el(self, coeffs):
        v = [c % self.mod for c in coeffs]
        v += [0] * (self.deg - len(v))
        return tuple(v[: self.deg]) if self.deg else tuple()

    def from_int(self, c):
        return self.el([c])

    def add(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.mod for x, y in zip(a, b))

    def mul(self, a, b):
        prod = pmul(list(a), list(b), self.mod)
        return self.el(pdivmod_monic(prod, self.phi, self.mod)[1])

    def scalar(self, c, a):
        return tuple(c * x % self.mod for x in a)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def val(self, a):
        """min p-valuation of the coordinates: the valuation in unramified W."""
        vs = [vp(x, self.p) for x in a if x]
        return min(vs) if vs else None

    def unit_inv(self, a):
        """Inverse of a unit via residue xgcd plus Newton lifting."""
        g, u, _ = _poly_xgcd_mod_p(list(a), self.phi, self.p)
        if g != [1]:
            raise CasError("not a unit in W")
        z = self.el(u)
        prec = 1
        while prec < self.S:
            # z <- z * (2 - a z)
            az = self.mul(a, z)
            two = self.from_int(2)
            z = self.mul(z, self.sub(two, az))
            prec *= 2
        return z

    def unit_sqrt(self, a):
        """Square root of a unit, odd p; None if the residue is a non-square."""
        if self.p == 2:
            raise CasError("unit_sqrt requires odd p")
        r = self._residue_sqrt(a)
        if r is None:
            return None
        z = self.el([c % self.p for c in r])
        prec = 1
        inv2 = pow(2, -1, self.mod)
        while prec < self.S:
            # z <- (z + a/z) / 2
            z_inv = self.unit_inv(z)
            z = self.scalar(inv2, self.add(z, self.mul(a, z_inv)))
            prec *= 2
        if not self.is_zero(self.sub(self.mul(z, z), tuple(a))):
            raise CasError("sqrt lifting failed")
        return z

    def _residue_sqrt(self, a):
        q = self.p ** self.deg
        res = tuple(c % self.p for c in a)
        if self.deg == 1:
            x = _tonelli(res[0], self.p)
            return None if x is None else [x]
        # small residue fields: exhaustive search (only tiny q occur here)
        if q > 20000:
            raise CasError("residue sqrt out of supported range")
        Wp = W(self.p, 1, self.phi)
        cands = _all_residues(self.p, self.deg)
        for cand in cands:
            if Wp.mul(cand, cand) == Wp.el(list(res)):
                return list(cand)
        return None

    def frobenius(self):
        """The lift of y -> y^p: the root of phi congruent to y^p mod p."""
        # Newton: start from the residue y^p, iterate t <- t - phi(t)/phi'(t)
        t = self._w_pow_y(self.p)
        dphi = [i * c % self.mod for i, c in enumerate(self.phi)][1:]
        for _ in range(self.S.bit_length() + 2):
            ft = self._eval_poly(self.phi, t)
            if self.is_zero(ft):
                break
            dft = self._eval_poly(dphi, t)
            t = self.sub(t, self.mul(ft, self.unit_inv(dft)))
        if not self.is_zero(self._eval_poly(self.phi, t)):
            raise CasError("Frobenius lift did not converge")
        return t

    def apply_sub(self, a, t):
        """Evaluate the coordinate polynomial of a at t (substitution y -> t)."""
        return self._eval_poly(list(a), t)

    def _eval_poly(self, coeffs, t):
        acc = self.from_int(0)
        for c in reversed(coeffs):
            acc = self.mul(acc, t)
            cc = c if isinstance(c, tuple) else self.from_int(c)
            acc = self.add(acc, cc)
        return acc

    def _w_pow_y(self, e):
        y = self.el([0, 1]) if self.deg > 1 else self.from_int(0)
        acc = self.from_int(1)
        base = y
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc


def _tonelli(a, p):
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _all_residues(p, deg):
    out = [()]
    for _ in range(deg):
        out = [t + (c,) for t in out for c in range(p)]
    return out


# ---------------------------------------------------------------------------
# cluster splitting through W

def split_cluster(cluster, phi, mult, p, S, extra=8):
    """Split a lifted cluster (image phi^mult) into its irreducible p-adic
    factors mod p^S, or return None when its roots do not lie in the
    unramified extension (the cluster is then taken as irreducible)."""
    if mult == 1:
        return [cluster]
    f0 = len(phi) - 1
    if f0 == 1 and mult >= 2:
        return _split_linear_image(cluster, phi, mult, p, S, extra)
    if mult != 2:
        raise CasError(f"unsupported cluster shape: image degree {f0}, multiplicity {mult}")
    return _split_quadratic_over_w(cluster, phi, p, S, extra)


def _split_linear_image(cluster, phi, mult, p, S, extra=8):
    """Roots congruent to the single residue root; Hensel branches that
    separate at level 2 split off linear factors."""
    work = S + extra
    P = p ** work
    C = [c % P for c in cluster]
    dC = trim([i * c % P for i, c in enumerate(C)][1:])
    c0 = (-phi[0]) % p
    def deep(x):
        val = peval(C, x, P)
        return val == 0 or vp(val, p) >= 3

    starts = [c0 + p * t for t in range(p) if deep(c0 + p * t)]
    if len(starts) != mult:
        return None  # not a full split into Z_p-roots
    roots = []
    for x in starts:
        for _ in range(work + 4):
            fx = peval(C, x, P)
            if fx == 0 or vp(fx, p) >= work - 2:
                break
            dfx = peval(dC, x, P)
            v = vp(dfx, p)
            if v is None or v != 1:
                return None
            unit = pow(dfx // p ** v, -1, P)
            x = (x - (fx // p ** v) * unit) % P
        if vp(peval(C, x, P) or P, p) < work - 2:
            raise CasError("root lifting did not converge")
        roots.append(x)
    ps = p ** S
    factors = [[(-r) % ps, 1] for r in sorted(roots)]
    _check_product(cluster, factors, p, S)
    return factors


def _split_quadratic_over_w(cluster, phi, p, S, extra=8):
    """Multiplicity-2 cluster with irreducible residue image phi: factor as a
    product of two conjugate quadratics (or two linears when deg phi = 1) with
    roots in W = Z_p[y]/(phi).

    The square root of the factor-pair discriminant loses v(disc) digits of
    precision, so the working precision carries `extra` slack; the driver
    certifies the result by agreement across two different slacks."""
    if p == 2:
        return None  # sqrt machinery is odd-p; shipped fields never need this
    f0 = len(phi) - 1
    work = S + extra
    w = W(p, work, [c % p ** work for c in phi])
    # residue roots of phi in F_q form one Frobenius orbit y, y^p, ...
    frob = w.frobenius()
    residue_roots = [w.el([0, 1])]
    for _ in range(f0 - 1):
        residue_roots.append(w.apply_sub(residue_roots[-1], frob))
    # split the cluster over W into coprime residue-class parts
    parts = []
    for r in residue_roots:
        rr = tuple(c % p for c in r)
        parts.append(_w_linear_power(w, rr, 2))
    Cw = [w.from_int(c) for c in cluster]
    lifted = _hensel_over_w(w, Cw, parts)
    # each part is quadratic over W: solve by the quadratic formula
    roots_by_class = []
    for part in lifted:
        b, c = part[1], part[0]
        disc = w.sub(w.mul(b, b), w.scalar(4, c))
        v = w.val(disc)
        if v is None or v % 2 != 0:
            return None
        unit = tuple(x // p ** v for x in disc)
        s = w.unit_sqrt(unit)
        if s is None:
            return None
        s = w.scalar(p ** (v // 2), s)
        inv2 = pow(2, -1, w.mod)
        x1 = w.scalar(inv2, w.sub(s, b))
        x2 = w.scalar(inv2, w.sub(w.scalar(-1, b), s))
        roots_by_class.append((x1, x2))
    if f0 == 1:
        roots = sorted(int(x[0]) % p ** S for x in roots_by_class[0])
        factors = [[(-r) % p ** S, 1] for r in roots]
        _check_product(cluster, factors, p, S)
        return factors
    # pair each root in class 0 with its Frobenius orbit across the classes
    factors = []
    for x in roots_by_class[0]:
        orbit = [x]
        for _ in range(f0 - 1):
            orbit.append(w.apply_sub(orbit[-1], frob))
        # elementary symmetric functions of the orbit give a Z_p factor
        poly = [w.from_int(1)]
        for root in orbit:
            poly = _w_poly_mul(w, poly, [w.scalar(-1, root), w.from_int(1)])
        coeffs = []
        for cf in poly[:-1]:
            if any(x % p ** (S + 2) for x in cf[1:]):
                raise CasError("orbit product is not rational")
            coeffs.append(cf[0] % p ** S)
        factors.append(coeffs + [1])
    factors.sort(key=lambda f: tuple(f))
    _check_product(cluster, factors, p, S)
    return factors


def _w_linear_power(w, residue_root, mult):
    base = [w.scalar(-1, w.el(list(residue_root))), w.from_int(1)]
    out = [w.from_int(1)]
    for _ in range(mult):
        out = _w_poly_mul(w, out, base)
    return [tuple(c % w.p for c in cf) for cf in out]


def _w_poly_mul(w, a, b):
    out = [w.from_int(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = w.add(out[i + j], w.mul(x, y))
    return out


def _hensel_over_w(w, C, parts_mod_p):
    """Linear multi-factor Hensel over W for pairwise coprime residue parts."""
    p = w.p
    Wp = W(p, 1, w.phi)

    def fq_xgcd(a, b):
        # xgcd of polynomials over the residue field F_q
        def norm(u):
            while u and Wp.is_zero(u[-1]):
                u.pop()
            return u

        def divmod_fq(x, y):
            x = [Wp.el(list(c)) for c in x]
            y = norm([Wp.el(list(c)) for c in y])
            inv = Wp.unit_inv(y[-1])
            q = [Wp.from_int(0)] * max(len(x) - len(y) + 1, 0)
            for i in range(len(x) - 1, len(y) - 2, -1):
                c = x[i]
                if not Wp.is_zero(c):
                    c = Wp.mul(c, inv)
                    q[i - len(y) + 1] = c
                    for j, yc in enumerate(y):
                        x[i - len(y) + 1 + j] = Wp.sub(x[i - len(y) + 1 + j], Wp.mul(c, yc))
                x[i] = Wp.from_int(0)
            return q, norm(x)

        r0 = norm([Wp.el(list(c)) for c in a])
        r1 = norm([Wp.el(list(c)) for c in b])
        s0, s1 = [Wp.from_int(1)], []
        t0, t1 = [], [Wp.from_int(1)]
        while r1:
            q, r = divmod_fq(r0, r1)
            r0, r1 = r1, r

            def sub_mul(u, qq, v):
                prod = [Wp.from_int(0)] * (len(qq) + len(v) - 1) if qq and v else []
                for i, qc in enumerate(qq):
                    for j, vc in enumerate(v):
                        prod[i + j] = Wp.add(prod[i + j], Wp.mul(qc, vc))
                out = [Wp.from_int(0)] * max(len(u), len(prod))
                for i, c in enumerate(u):
                    out[i] = Wp.add(out[i], c)
                for i, c in enumerate(prod):
                    out[i] = Wp.sub(out[i], c)
                return norm(out)

            s0, s1 = s1, sub_mul(s0, q, s1)
            t0, t1 = t1, sub_mul(t0, q, t1)
        inv = Wp.unit_inv(r0[-1])
        return ([Wp.mul(c, inv) for c in r0], [Wp.mul(c, inv) for c in s0],
                [Wp.mul(c, inv) for c in t0])

    lams = []
    for i, q in enumerate(parts_mod_p):
        rest = [Wp.from_int(1)]
        for j, r in enumerate(parts_mod_p):
            if j != i:
                prod = _w_poly_mul(Wp, rest, [Wp.el(list(c)) for c in r])
                rest = _w_poly_divmod_monic(Wp, prod, [Wp.el(list(c)) for c in q])[1]
        g, u, _ = fq_xgcd(rest, q)
        if len(g) != 1 or g[0] != Wp.from_int(1):
            raise CasError("residue parts not coprime over F_q")
        lams.append(u)
    lifted = [[w.el(list(c)) for c in q] for q in parts_mod_p]
    for j in range(1, w.S):
        pj = p ** j
        total = [w.from_int(1)]
        for cs in lifted:
            total = _w_poly_mul(w, total, cs)
        err = [w.sub(a, b) for a, b in
               zip(C + [w.from_int(0)] * (len(total) - len(C)), total)]
        e_over = [tuple((x // pj) % p for x in cf) for cf in err]
        if all(all(x == 0 for x in cf) for cf in e_over):
            continue
        for i, q in enumerate(parts_mod_p):
            lam_w = [w.el(list(c)) for c in lams[i]]
            e_w = [w.el(list(c)) for c in e_over]
            prod = _w_poly_mul(w, lam_w, e_w)
            qq = [w.el(list(c)) for c in q]
            delta = _w_poly_divmod_monic(w, prod, qq)[1]
            # the delta arithmetic above ran mod p^S; only its mod-p part matters
            cur = lifted[i]
            for idx in range(len(delta)):
                dmodp = tuple(x % p for x in delta[idx])
                cur[idx] = w.add(cur[idx], w.scalar(pj, w.el(list(dmodp))))
    return lifted


def _w_poly_divmod_monic(w, a, d):
    r = [c for c in a]
    dd = len(d) - 1
    q = [w.from_int(0)] * max(len(r) - dd, 0)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if not w.is_zero(c):
            q[i - dd] = c
            for j, dc in enumerate(d):
                r[i - dd + j] = w.sub(r[i - dd + j], w.mul(c, dc))
            r[i] = w.from_int(0)
    while len(r) > dd:
        r.pop()
    return q, r


def _check_product(cluster, factors, p, S):
    ps = p ** S
    prod = [1]
    for f in factors:
        prod = pmul(prod, f, ps)
    if trim([c % ps for c in cluster]) != prod:
        raise CasError("cluster split product check failed")


# ---------------------------------------------------------------------------
# full factorization driver

def _padic_factors_at(g_coeffs, p, S, extra):
    mods = factor_list_mod_p(g_coeffs, p)
    parts = []
    for phi, m in mods:
        prod = [1]
        for _ in range(m):
            prod = pmul(prod, phi, p)
        parts.append(prod)
    lifted = hensel_coprime(g_coeffs, parts, p, S + extra)
    out = []
    for (phi, m), cluster in zip(mods, lifted):
        split = split_cluster(cluster, phi, m, p, S, extra) if m > 1 else [cluster]
        if split is None:
            out.append([c % p ** S for c in cluster])
        else:
            out.extend([c % p ** S for c in f] for f in split)
    ps = p ** S
    prod = [1]
    for f in out:
        prod = pmul(prod, f, ps)
    if prod != trim([c % ps for c in g_coeffs]):
        raise CasError("factor product check failed")
    return out


def padic_factors(g_coeffs, p, S):
    """Irreducible p-adic factors of monic g mod p^S (constant-first, each
    list includes the leading 1).  Factors that resisted splitting are
    returned whole; the caller settles ramification with the discriminant.

    Computed twice at different precision slacks; a prefix disagreement means
    some precision loss went unaccounted for, and the run fails loudly."""
    a = _padic_factors_at(g_coeffs, p, S, 8)
    b = _padic_factors_at(g_coeffs, p, S, 14)
    if sorted(map(tuple, a)) != sorted(map(tuple, b)):
        raise CasError(f"p-adic factors unstable across precision slack at p={p}")
    return a
