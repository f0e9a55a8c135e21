"""Exact scalar domains: Q, number fields Q(alpha), finite fields F_p(beta).

Field elements are plain immutable values (Fraction, tuple of Fraction,
tuple of int); the field object carries the arithmetic.  All three domains
expose the same small protocol, so the matrix layer is domain-agnostic:

    zero, one, coerce, add, sub, neg, mul, inv, is_zero, from_int

Polynomials are tuples of coefficients in ascending degree order.
"""

from fractions import Fraction

import sympy
from sympy import symbols as _symbols

try:
    from gmpy2 import mpq as QF
except ImportError:  # pragma: no cover
    QF = Fraction

from .errors import GroupRankError

_X = _symbols("x")


# -------------------- generic polynomial helpers --------------------

def poly_trim(coeffs, is_zero):
    c = list(coeffs)
    while c and is_zero(c[-1]):
        c.pop()
    return tuple(c)


def poly_add(field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.add(x, y))
    return poly_trim(out, field.is_zero)


def poly_scale(field, a, c):
    return poly_trim([field.mul(x, c) for x in a], field.is_zero)


def poly_mul(field, a, b):
    if not a or not b:
        return ()
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return poly_trim(out, field.is_zero)


def poly_divmod(field, a, b):
    """Quotient and remainder of a by b over a field; b nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    while len(a) >= len(b):
        c = field.mul(a[-1], inv_lead)
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = field.sub(a[d + i], field.mul(c, y))
        while a and field.is_zero(a[-1]):
            a.pop()
    return poly_trim(q, field.is_zero), poly_trim(a, field.is_zero)


def poly_gcd(field, a, b):
    """Monic gcd over a field."""
    a = poly_trim(a, field.is_zero)
    b = poly_trim(b, field.is_zero)
    while b:
        _, r = poly_divmod(field, a, b)
        a, b = b, r
    if not a:
        return a
    return poly_scale(field, a, field.inv(a[-1]))


def poly_deriv(field, a):
    return poly_trim([field.mul(c, field.from_int(i)) for i, c in enumerate(a)][1:],
                     field.is_zero)


def poly_eval(field, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_squarefree_part(field, a):
    """Radical a / gcd(a, a') of a nonzero polynomial, made monic."""
    g = poly_gcd(field, a, poly_deriv(field, a))
    if len(g) <= 1:
        return poly_scale(field, a, field.inv(a[-1]))
    q, r = poly_divmod(field, a, g)
    assert not r
    return poly_scale(field, q, field.inv(q[-1]))


def poly_xgcd(field, a, b):
    """(g, s, t) with s*a + t*b = g, g monic gcd."""
    r0, r1 = poly_trim(a, field.is_zero), poly_trim(b, field.is_zero)
    s0, s1 = (field.one,), ()
    t0, t1 = (), (field.one,)
    while r1:
        q, r = poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_add(field, s0, poly_scale(field, poly_mul(field, q, s1), field.neg(field.one)))
        t0, t1 = t1, poly_add(field, t0, poly_scale(field, poly_mul(field, q, t1), field.neg(field.one)))
    if r0:
        c = field.inv(r0[-1])
        r0 = poly_scale(field, r0, c)
        s0 = poly_scale(field, s0, c)
        t0 = poly_scale(field, t0, c)
    return r0, s0, t0


# -------------------- integer polynomial utilities --------------------

def int_poly_resultant(f, g):
    """Resultant of two integer polynomials (ascending coefficients)."""
    n, m = len(f) - 1, len(g) - 1
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    size = n + m
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(m):
        rows.append([0] * i + fr + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + gr + [0] * (n - 1 - i))
    return _int_det([row[:size] for row in rows])


def _int_det(rows):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_poly_discriminant(f):
    """Discriminant of a monic integer polynomial; 1 for degree <= 1."""
    n = len(f) - 1
    if n <= 1:
        return 1
    fp = tuple(c * i for i, c in enumerate(f))[1:]
    res = int_poly_resultant(f, fp)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def is_irreducible_over_q(coeffs):
    """Irreducibility over Q of an integer polynomial of degree >= 1."""
    if len(coeffs) < 2:
        return False
    p = sympy.Poly(list(reversed(coeffs)), _X, domain="QQ")
    _, factors = p.factor_list()
    return len(factors) == 1 and factors[0][1] == 1


# -------------------- the rational field --------------------

class RationalField:
    """Q with elements held as exact rationals (always reduced)."""

    zero = QF(0)
    one = QF(1)

    def coerce(self, x):
        return QF(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return QF(n)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# -------------------- number fields --------------------

class NumberFieldSpec:
    """The field P = Q(alpha) for alpha a root of a monic irreducible f in Z[X].

    Elements are tuples of ``degree`` Fractions: coordinates in the power
    basis 1, alpha, ..., alpha^(m-1).  The degree-1 spec with f = X encodes
    P = Q itself (alpha = 0).
    """

    def __init__(self, minpoly):
        coeffs = tuple(int(c) for c in minpoly)
        if len(coeffs) < 2:
            raise GroupRankError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise GroupRankError("minimal polynomial must be monic")
        if len(coeffs) > 2 and not is_irreducible_over_q(coeffs):
            raise GroupRankError("minimal polynomial is reducible over Q: %s" % (coeffs,))
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.discriminant = int_poly_discriminant(coeffs)
        m = self.degree
        self.zero = tuple(QF(0) for _ in range(m))
        self.one = tuple(QF(1) if i == 0 else QF(0) for i in range(m))
        # x^k mod f for k = m .. 2m-2, used by schoolbook multiplication
        self._red = []
        if m >= 1:
            cur = [QF(-c) for c in coeffs[:-1]]  # x^m
            self._red.append(tuple(cur))
            for _ in range(m - 2):
                nxt = [QF(0)] + cur[:-1]
                top = cur[-1]
                for i in range(m):
                    nxt[i] += top * -coeffs[i]
                cur = nxt
                self._red.append(tuple(cur))

    @classmethod
    def rationals(cls):
        return cls((0, 1))

    @property
    def is_rational(self):
        return self.degree == 1

    def alpha(self):
        m = self.degree
        if m == 1:
            # alpha is the root of f; for the f = X convention that is 0
            return (QF(-self.minpoly[0]),)
        return tuple(QF(1) if i == 1 else QF(0) for i in range(m))

    def coerce(self, x):
        if isinstance(x, tuple):
            if len(x) != self.degree:
                raise GroupRankError("element has %d coordinates, expected %d" % (len(x), self.degree))
            return tuple(QF(c) for c in x)
        return self.from_fraction(QF(x))

    def from_int(self, n):
        return self.from_fraction(QF(n))

    def from_fraction(self, q):
        return (QF(q),) + self.zero[1:]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        m = self.degree
        if m == 1:
            return (a[0] * b[0],)
        prod = [QF(0)] * (2 * m - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        out = prod[:m]
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c:
                red = self._red[k - m]
                for i in range(m):
                    out[i] += c * red[i]
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return (1 / a[0],)
        apoly = poly_trim(a, lambda c: c == 0)
        f = tuple(QF(c) for c in self.minpoly)
        g, s, _ = poly_xgcd(_FRACTION_POLY_FIELD, apoly, f)
        if len(g) != 1:
            raise ZeroDivisionError("element is not invertible")
        s = poly_scale(_FRACTION_POLY_FIELD, s, 1 / g[0])
        out = list(s) + [QF(0)] * (self.degree - len(s))
        return tuple(out[: self.degree])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def as_rational(self, a):
        """The element as a Fraction if it lies in Q, else None."""
        if any(a[1:]):
            return None
        return a[0]

    def mul_matrix(self, a):
        """Rows of the multiplication-by-a matrix on the power basis.

        Column j holds the coordinates of a * alpha^j, so the map is a ring
        homomorphism into m x m rational matrices.
        """
        m = self.degree
        cols = []
        cur = a
        for _ in range(m):
            cols.append(cur)
            cur = self.mul(cur, self.alpha()) if m > 1 else cur
        return [tuple(cols[j][i] for j in range(m)) for i in range(m)]

    def norm(self, a):
        """Field norm N(a) as a Fraction (determinant of mul_matrix)."""
        m = self.degree
        if m == 1:
            return a[0]
        rows = [list(r) for r in self.mul_matrix(a)]
        det = QF(1)
        for k in range(m):
            piv = None
            for i in range(k, m):
                if rows[i][k] != 0:
                    piv = i
                    break
            if piv is None:
                return QF(0)
            if piv != k:
                rows[k], rows[piv] = rows[piv], rows[k]
                det = -det
            det *= rows[k][k]
            invp = 1 / rows[k][k]
            for i in range(k + 1, m):
                fac = rows[i][k] * invp
                if fac:
                    for j in range(k, m):
                        rows[i][j] -= fac * rows[k][j]
        return det

    def denominator_lcm(self, a):
        out = 1
        for c in a:
            d = int(c.denominator)
            out = out * d // _gcd(out, d)
        return out

    def elt_str(self, a):
        if self.degree == 1:
            return str(a[0])
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*a" % c)
            else:
                parts.append("%s*a^%d" % (c, i))
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return isinstance(other, NumberFieldSpec) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.is_rational:
            return "QQ(as number field)"
        return "NumberField(%s)" % (self.minpoly,)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class _FractionPolyField:
    # field protocol for rational coefficients, used by poly helpers above
    zero = QF(0)
    one = QF(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def from_int(n):
        return QF(n)


_FRACTION_POLY_FIELD = _FractionPolyField()


# -------------------- finite fields --------------------

class FiniteField:
    """F_p(beta) = F_p[X]/(g) for g a monic irreducible factor of f mod p.

    Elements are tuples of ints in [0, p), length deg(g); beta is the class
    of X.
    """

    def __init__(self, p, modulus):
        self.p = int(p)
        g = tuple(int(c) % self.p for c in modulus)
        if not g or g[-1] != 1:
            raise GroupRankError("finite-field modulus must be monic")
        self.modulus = g
        self.deg = len(g) - 1
        if self.deg < 1:
            raise GroupRankError("finite-field modulus must have degree >= 1")
        self.order = self.p ** self.deg
        self.zero = (0,) * self.deg
        self.one = (1,) + (0,) * (self.deg - 1)
        # X^k mod g for k = deg .. 2*deg-2
        self._red = []
        if self.deg > 1:
            cur = [(-c) % self.p for c in g[:-1]]
            self._red.append(tuple(cur))
            for _ in range(self.deg - 2):
                nxt = [0] + cur[:-1]
                top = cur[-1]
                for i in range(self.deg):
                    nxt[i] = (nxt[i] + top * (-g[i])) % self.p
                cur = nxt
                self._red.append(tuple(cur))

    def beta(self):
        if self.deg == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.deg - 2)

    def coerce(self, x):
        if isinstance(x, tuple):
            if len(x) != self.deg:
                raise GroupRankError("element has %d coordinates, expected %d" % (len(x), self.deg))
            return tuple(int(c) % self.p for c in x)
        return self.from_int(int(x))

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.deg - 1)

    def from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by p=%d" % self.p)
        return self.from_int(q.numerator * pow(den, -1, self.p))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p = self.p
        d = self.deg
        if d == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = [c % p for c in prod[:d]]
        for k in range(d, 2 * d - 1):
            c = prod[k] % p
            if c:
                red = self._red[k - d]
                for i in range(d):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.deg == 1:
            return (pow(a[0], -1, self.p),)
        field = _PrimeField(self.p)
        apoly = poly_trim(a, lambda c: c == 0)
        g, s, _ = poly_xgcd(field, apoly, self.modulus)
        assert len(g) == 1
        s = poly_scale(field, s, pow(g[0], -1, self.p))
        out = list(s) + [0] * (self.deg - len(s))
        return tuple(out[: self.deg])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.deg == 1:
            return "GF(%d)" % self.p
        return "GF(%d^%d; %s)" % (self.p, self.deg, self.modulus)


class _PrimeField:
    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p


def _poly_pow_mod(field, base, k, mod):
    out = (field.one,)
    base = poly_divmod(field, base, mod)[1]
    while k:
        if k & 1:
            out = poly_divmod(field, poly_mul(field, out, base), mod)[1]
        base = poly_divmod(field, poly_mul(field, base, base), mod)[1]
        k >>= 1
    return out


def factor_mod_p(coeffs, p):
    """Distinct monic irreducible factors of an integer polynomial mod p.

    Distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
    splitting with a deterministic sweep of splitting elements; p must be odd.
    Multiplicities are discarded; factors are sorted by (degree, coefficients).
    """
    field = _PrimeField(p)
    f = poly_trim([c % p for c in coeffs], field.is_zero)
    if len(f) < 2:
        raise GroupRankError("polynomial is constant mod %d" % p)
    f = poly_scale(field, f, pow(f[-1], -1, p))
    factors = []

    def _distinct_degree(g):
        # g squarefree monic; split into products of irreducibles of equal degree
        h = (0, 1)  # X
        d = 0
        rest = g
        while len(rest) - 1 >= 2 * (d + 1):
            d += 1
            h = _poly_pow_mod(field, h, p, rest)
            sub = poly_add(field, h, poly_scale(field, (0, 1), field.neg(field.one)))
            gd = poly_gcd(field, sub, rest)
            if len(gd) > 1:
                _equal_degree(gd, d)
                rest, r = poly_divmod(field, rest, gd)
                assert not r
                if len(rest) > 1:
                    h = poly_divmod(field, h, rest)[1]
        if len(rest) > 1:
            _equal_degree(rest, len(rest) - 1)

    def _equal_degree(g, d):
        # all irreducible factors of g have degree d
        if len(g) - 1 == d:
            factors.append(g)
            return
        q = p ** d
        e = (q - 1) // 2
        c = 0
        while True:
            # deterministic sweep over candidate splitting polynomials
            cand = _candidate_poly(c, d)
            c += 1
            w = _poly_pow_mod(field, cand, e, g)
            w1 = poly_add(field, w, poly_scale(field, (field.one,), field.neg(field.one)))
            gd = poly_gcd(field, w1, g)
            if 1 < len(gd) < len(g):
                _equal_degree(gd, d)
                q2, r = poly_divmod(field, g, gd)
                assert not r
                _equal_degree(q2, d)
                return

    def _candidate_poly(idx, d):
        # exhaustively enumerate monic polynomials X^e + c_{e-1}X^{e-1} + ... + c_0
        # of degree e = 1, 2, ... via base-p digits of idx; the sweep is
        # deterministic and eventually hits a splitting element
        e = 1
        block = p
        while idx >= block:
            idx -= block
            e += 1
            block *= p
        coeffs = [0] * (e + 1)
        coeffs[-1] = 1
        for i in range(e):
            coeffs[i] = idx % p
            idx //= p
        return poly_trim(coeffs, field.is_zero)

    # squarefree decomposition by repeated radical extraction
    g2 = f
    while len(g2) > 1:
        der = poly_deriv(field, g2)
        if not der:
            # g2 = h(X^p) = h(X)^p in F_p[X]; take the p-th root
            g2 = poly_trim([g2[i] for i in range(0, len(g2), p)], field.is_zero)
            continue
        sf = poly_squarefree_part(field, g2)
        _distinct_degree(sf)
        g2, rr = poly_divmod(field, g2, sf)
        assert not rr

    out = sorted(set(factors), key=lambda fac: (len(fac), fac))
    return out


def balanced_residues(coeffs, p):
    """Coefficients lifted to the symmetric range (-p/2, p/2]."""
    out = []
    for c in coeffs:
        c = c % p
        if c > p // 2:
            c -= p
        out.append(c)
    return tuple(out)
