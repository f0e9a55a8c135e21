"""Exact finite-place data for nonzero number field elements.

For a prime p not dividing the field discriminant, the irreducible factors
of the defining polynomial mod p correspond to the primes above p; Hensel
lifting plus resultants computes each valuation exactly.  Primes dividing
the discriminant fall back to the valuation of the norm, which is still a
homomorphism to Z and therefore safe for both constraints and rank
certificates.
"""

import sympy

from .errors import GroupRankError
from .numberfield import factor_mod_p, int_poly_resultant, poly_trim


def _vp_int(n, p):
    n = abs(int(n))
    if n == 0:
        raise GroupRankError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q, p):
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def _prime_set(n):
    n = abs(int(n))
    if n <= 1:
        return set()
    return set(sympy.factorint(n).keys())


def _poly_mul_mod(a, b, mod):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % mod
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_sub_mod(a, b, mod):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % mod
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod_monic_mod(a, b, mod):
    """Division by a monic polynomial over Z/mod."""
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] % mod
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % mod
        while a and a[-1] % mod == 0:
            a.pop()
    return q, a


def _poly_add_mod(a, b, mod):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % mod
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _hensel_pair(f, g, h, s, t, p, target):
    """Lift f = g*h with s*g + t*h = 1 from mod p to mod p^target (monic f, g, h)."""
    mod = p
    final = p ** target
    while mod < final:
        mod = min(mod * mod, final)
        e = _poly_sub_mod(f, _poly_mul_mod(g, h, mod), mod)
        q, r = _poly_divmod_monic_mod(_poly_mul_mod(s, e, mod), h, mod)
        g = _poly_add_mod(g, _poly_add_mod(_poly_mul_mod(t, e, mod),
                                           _poly_mul_mod(q, g, mod), mod), mod)
        h = _poly_add_mod(h, r, mod)
        b = _poly_sub_mod(_poly_add_mod(_poly_mul_mod(s, g, mod),
                                        _poly_mul_mod(t, h, mod), mod), [1], mod)
        c, d = _poly_divmod_monic_mod(_poly_mul_mod(s, b, mod), h, mod)
        s = _poly_sub_mod(s, d, mod)
        t = _poly_sub_mod(t, _poly_add_mod(_poly_mul_mod(t, b, mod),
                                           _poly_mul_mod(c, g, mod), mod), mod)
    if not g or g[-1] != 1 or not h or h[-1] != 1:
        raise GroupRankError("internal: Hensel lift lost monicity")
    return g, h


def _poly_xgcd_mod_p(a, b, p):
    """Extended gcd over F_p; returns (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = [x % p for x in a], [x % p for x in b]
    s0, s1 = [1], []
    t0, t1 = [], [1]

    def trim(v):
        v = list(v)
        while v and v[-1] % p == 0:
            v.pop()
        return v

    r0, r1 = trim(r0), trim(r1)
    while r1:
        inv = pow(r1[-1], -1, p)
        q = [0] * (len(r0) - len(r1) + 1)
        rr = list(r0)
        while len(rr) >= len(r1) and rr:
            c = (rr[-1] * inv) % p
            d = len(rr) - len(r1)
            q[d] = c
            for i, y in enumerate(r1):
                rr[d + i] = (rr[d + i] - c * y) % p
            rr = trim(rr)
        r0, r1 = r1, rr
        s0, s1 = s1, trim(_poly_sub_mod(s0, _poly_mul_mod(q, s1, p), p))
        t0, t1 = t1, trim(_poly_sub_mod(t0, _poly_mul_mod(q, t1, p), p))
    lead_inv = pow(r0[-1], -1, p)
    r0 = [(x * lead_inv) % p for x in r0]
    s0 = [(x * lead_inv) % p for x in s0]
    t0 = [(x * lead_inv) % p for x in t0]
    return r0, s0, t0


def hensel_lift_factors(f, factors, p, target):
    """Lift the pairwise-coprime monic factorization of f mod p to mod p^target."""
    f = [int(c) % (p ** target) for c in f]
    if len(factors) == 1:
        return [tuple(c % (p ** target) for c in f)]
    mid = len(factors) // 2
    left = factors[:mid]
    right = factors[mid:]
    g = [1]
    for fac in left:
        g = _poly_mul_mod(g, [c % p for c in fac], p)
    h = [1]
    for fac in right:
        h = _poly_mul_mod(h, [c % p for c in fac], p)
    gcd, s, t = _poly_xgcd_mod_p(g, h, p)
    if len(gcd) != 1:
        raise GroupRankError("factors are not coprime mod p")
    glift, hlift = _hensel_pair(f, g, h, s, t, p, target)
    return (hensel_lift_factors(glift, left, p, target)
            + hensel_lift_factors(hlift, right, p, target))


def _element_num_den(elt):
    """Integer numerator polynomial (ascending) and denominator of an element."""
    den = 1
    for c in elt:
        den = sympy.ilcm(den, int(c.denominator))
    den = int(den)
    num = tuple(int(c * den) for c in elt)
    return poly_trim(num, lambda x: x == 0), den


def _valuation_good_prime(elements, spec, p):
    """Per-factor valuations of the elements at the primes above a prime p
    with p not dividing disc(f); returns a list of rows (one per prime above p)."""
    factors = factor_mod_p(spec.minpoly, p)
    norms = [spec.norm(e) for e in elements]
    vmax = max(abs(vp_fraction(nm, p)) for nm in norms) if norms else 0
    target = max(8, 2 * vmax + 4)
    for _ in range(8):
        lifted = hensel_lift_factors(spec.minpoly, factors, p, target)
        rows = [[None] * len(elements) for _ in factors]
        ok = True
        for j, glift in enumerate(lifted):
            fdeg = len(glift) - 1
            for i, elt in enumerate(elements):
                num, den = _element_num_den(elt)
                res = int_poly_resultant(tuple(glift), num)
                res_mod = res % (p ** target)
                if res_mod == 0:
                    ok = False
                    break
                v_num = _vp_int(res_mod, p)
                if v_num >= target - 1:
                    ok = False
                    break
                if v_num % fdeg != 0:
                    raise GroupRankError("internal: valuation not divisible by residue degree")
                rows[j][i] = v_num // fdeg - _vp_int(den, p)
            if not ok:
                break
        if ok:
            for i, nm in enumerate(norms):
                total = sum(rows[j][i] * (len(lifted[j]) - 1) for j in range(len(lifted)))
                if total != vp_fraction(nm, p):
                    raise GroupRankError("internal: valuations do not sum to the norm valuation")
            return [tuple(r) for r in rows]
        target *= 2
    raise GroupRankError("internal: Hensel precision exhausted at p=%d" % p)


def valuation_rows(elements, spec):
    """Exact integer homomorphism rows for a list of nonzero field elements.

    One row per place datum; entry (row, i) is the image of elements[i].
    Split prime-ideal valuations are used away from the discriminant, the
    norm valuation otherwise.
    """
    if not elements:
        return []
    if spec.degree == 1:
        primes = set()
        for e in elements:
            q = e[0]
            primes |= _prime_set(q.numerator)
            primes |= _prime_set(q.denominator)
        rows = []
        for p in sorted(primes):
            rows.append(tuple(vp_fraction(e[0], p) for e in elements))
        return rows
    primes = set()
    for e in elements:
        nm = spec.norm(e)
        if nm == 0:
            raise GroupRankError("valuation of a singular element")
        primes |= _prime_set(nm.numerator)
        primes |= _prime_set(nm.denominator)
    disc = spec.discriminant
    rows = []
    for p in sorted(primes):
        if disc % p != 0:
            rows.extend(_valuation_good_prime(elements, spec, p))
        else:
            rows.append(tuple(vp_fraction(spec.norm(e), p) for e in elements))
    return rows
