"""Exact matrices, subspaces, and the decompositions built on them.

One matrix type serves all three scalar domains (Q, Q(alpha), F_p(beta));
the domain object supplies the arithmetic.  Everything here is pure and
immutable: echelon forms are canonical, so equal subspaces compare equal
as arrays.
"""

from .errors import GroupRankError
from .numberfield import (
    QF,
    QQ,
    NumberFieldSpec,
    poly_gcd,
    poly_deriv,
    poly_squarefree_part,
    poly_trim,
)


class Mat:
    """Square matrix over a scalar domain; immutable and hashable."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        self.n = len(self.rows)
        for r in self.rows:
            if len(r) != self.n:
                raise GroupRankError("matrix is not square")

    @classmethod
    def _raw(cls, ring, rows):
        # fast path for arithmetic results whose entries are already canonical
        obj = object.__new__(cls)
        obj.ring = ring
        obj.rows = rows
        obj.n = len(rows)
        return obj

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zeros(cls, ring, n):
        return cls(ring, [[ring.zero] * n for _ in range(n)])

    @classmethod
    def basis_matrix(cls, ring, n, i, j, value=1):
        rows = [[ring.zero] * n for _ in range(n)]
        rows[i][j] = ring.coerce(value)
        return cls(ring, rows)

    def __mul__(self, other):
        ring = self.ring
        n = self.n
        if isinstance(other, Mat):
            if other.n != n:
                raise GroupRankError("dimension mismatch: %d vs %d" % (n, other.n))
            bt = other.rows
            out = []
            for i in range(n):
                ai = self.rows[i]
                row = []
                for j in range(n):
                    acc = ring.zero
                    for k in range(n):
                        x = ai[k]
                        if not ring.is_zero(x):
                            acc = ring.add(acc, ring.mul(x, bt[k][j]))
                    row.append(acc)
                out.append(tuple(row))
            return Mat._raw(ring, tuple(out))
        c = ring.coerce(other)
        return Mat._raw(ring, tuple(tuple(ring.mul(x, c) for x in r) for r in self.rows))

    __rmul__ = __mul__

    def __add__(self, other):
        ring = self.ring
        return Mat._raw(ring, tuple(tuple(ring.add(x, y) for x, y in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        ring = self.ring
        return Mat._raw(ring, tuple(tuple(ring.sub(x, y) for x, y in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        ring = self.ring
        return Mat._raw(ring, tuple(tuple(ring.neg(x) for x in r) for r in self.rows))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Mat.identity(self.ring, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_identity(self):
        ring = self.ring
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if i == j:
                    if x != ring.one:
                        return False
                elif not ring.is_zero(x):
                    return False
        return True

    def is_zero(self):
        ring = self.ring
        return all(ring.is_zero(x) for r in self.rows for x in r)

    def trace(self):
        ring = self.ring
        acc = ring.zero
        for i in range(self.n):
            acc = ring.add(acc, self.rows[i][i])
        return acc

    def transpose(self):
        return Mat._raw(self.ring, tuple(zip(*self.rows)))

    def det(self):
        ring = self.ring
        n = self.n
        a = [list(r) for r in self.rows]
        det = ring.one
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not ring.is_zero(a[i][k]):
                    piv = i
                    break
            if piv is None:
                return ring.zero
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = ring.neg(det)
            det = ring.mul(det, a[k][k])
            inv = ring.inv(a[k][k])
            for i in range(k + 1, n):
                if ring.is_zero(a[i][k]):
                    continue
                fac = ring.mul(a[i][k], inv)
                for j in range(k, n):
                    a[i][j] = ring.sub(a[i][j], ring.mul(fac, a[k][j]))
        return det

    def inverse(self):
        ring = self.ring
        n = self.n
        a = [list(r) + [ring.one if i == j else ring.zero for j in range(n)]
             for i, r in enumerate(self.rows)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not ring.is_zero(a[i][k]):
                    piv = i
                    break
            if piv is None:
                raise GroupRankError("matrix is singular")
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
            inv = ring.inv(a[k][k])
            a[k] = [ring.mul(x, inv) for x in a[k]]
            for i in range(n):
                if i != k and not ring.is_zero(a[i][k]):
                    fac = a[i][k]
                    a[i] = [ring.sub(x, ring.mul(fac, y)) for x, y in zip(a[i], a[k])]
        return Mat._raw(ring, tuple(tuple(row[n:]) for row in a))

    def apply(self, vec):
        """The image g*v of a column vector given as a tuple."""
        ring = self.ring
        out = []
        for row in self.rows:
            acc = ring.zero
            for x, v in zip(row, vec):
                if not ring.is_zero(x):
                    acc = ring.add(acc, ring.mul(x, v))
            out.append(acc)
        return tuple(out)

    def flatten(self):
        return tuple(x for r in self.rows for x in r)

    def __repr__(self):
        return "Mat(%r)" % (self.rows,)


def mat_from_flat(ring, n, flat):
    return Mat._raw(ring, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


# -------------------- echelon forms --------------------

def rref(ring, rows):
    """Canonical reduced row echelon form; returns (rows, pivot_columns).

    Zero rows are dropped, pivots are 1 with zeros above and below, rows
    are ordered by pivot column; equal row spaces yield identical arrays.
    """
    a = [list(r) for r in rows]
    if not a:
        return (), ()
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if not ring.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ring.inv(a[r][c])
        a[r] = [ring.mul(x, inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and not ring.is_zero(a[i][c]):
                fac = a[i][c]
                a[i] = [ring.sub(x, ring.mul(fac, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return tuple(tuple(row) for row in a[:r]), tuple(pivots)


def nullspace(ring, rows, ncols):
    """Canonical basis of {v : M v = 0} for the matrix with the given rows."""
    red, pivots = rref(ring, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ring.zero] * ncols
        v[fc] = ring.one
        for r, pc in zip(red, pivots):
            v[pc] = ring.neg(r[fc])
        basis.append(tuple(v))
    red2, _ = rref(ring, basis)
    return red2


def solve_right(ring, mat_rows, target):
    """One solution x of M x = t, or None; M given by rows, t a tuple."""
    rows = [list(r) + [t] for r, t in zip(mat_rows, target)]
    ncols = len(mat_rows[0]) if mat_rows else 0
    red, pivots = rref(ring, rows)
    x = [ring.zero] * ncols
    for r, pc in zip(red, pivots):
        if pc == ncols:
            return None  # inconsistent
        x[pc] = r[-1]
    return tuple(x)


# -------------------- subspaces --------------------

class Subspace:
    """A subspace of the column space F^n, held as a canonical echelon row basis."""

    __slots__ = ("ring", "ambient", "basis")

    def __init__(self, ring, ambient, vectors):
        self.ring = ring
        self.ambient = ambient
        red, _ = rref(ring, [tuple(ring.coerce(x) for x in v) for v in vectors])
        self.basis = red

    @classmethod
    def full(cls, ring, n):
        return cls(ring, n, [[ring.one if i == j else ring.zero for j in range(n)]
                             for i in range(n)])

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, n, [])

    @property
    def dim(self):
        return len(self.basis)

    def is_full(self):
        return self.dim == self.ambient

    def is_zero(self):
        return self.dim == 0

    def contains(self, vec):
        ring = self.ring
        v = list(vec)
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if not ring.is_zero(x))
            if not ring.is_zero(v[pc]):
                fac = v[pc]
                v = [ring.sub(x, ring.mul(fac, y)) for x, y in zip(v, row)]
        return all(ring.is_zero(x) for x in v)

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def intersect(self, other):
        """Exact intersection via the Zassenhaus double-block trick."""
        if self.ambient != other.ambient or self.ring is not other.ring:
            if self.ambient != other.ambient:
                raise GroupRankError("ambient dimension mismatch")
        ring = self.ring
        n = self.ambient
        zero = tuple(ring.zero for _ in range(n))
        rows = [tuple(v) + tuple(v) for v in self.basis]
        rows += [tuple(v) + zero for v in other.basis]
        red, _ = rref(ring, rows)
        inter = []
        for row in red:
            if all(ring.is_zero(x) for x in row[:n]):
                inter.append(row[n:])
        return Subspace(ring, n, inter)

    def image_under(self, g):
        if g.n != self.ambient:
            raise GroupRankError("ambient dimension mismatch")
        return Subspace(self.ring, self.ambient, [g.apply(v) for v in self.basis])

    def sum_with(self, other):
        return Subspace(self.ring, self.ambient, list(self.basis) + list(other.basis))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of %d)" % (self.dim, self.ambient)


def subspace_intersect(a, b):
    return a.intersect(b)


def subspace_image(g, w):
    return w.image_under(g)


def common_kernel(mats):
    """The exact joint kernel {v : h v = 0 for every h in mats}."""
    if not mats:
        raise GroupRankError("common_kernel needs at least one matrix")
    ring = mats[0].ring
    n = mats[0].n
    rows = []
    for h in mats:
        if h.n != n:
            raise GroupRankError("dimension mismatch")
        rows.extend(h.rows)
    return Subspace(ring, n, nullspace(ring, rows, n))


def extend_basis(ring, current, candidates, ambient):
    """Extend an independent list by candidate vectors, preserving order."""
    rows = list(current)
    red, _ = rref(ring, rows)
    have = [list(r) for r in red]
    out = list(current)
    for v in candidates:
        w = list(v)
        for row in have:
            pc = next((i for i, x in enumerate(row) if not ring.is_zero(x)), None)
            if pc is not None and not ring.is_zero(w[pc]):
                fac = w[pc]
                w = [ring.sub(x, ring.mul(fac, y)) for x, y in zip(w, row)]
        if any(not ring.is_zero(x) for x in w):
            out.append(tuple(v))
            red, _ = rref(ring, out)
            have = [list(r) for r in red]
        if len(out) == ambient:
            break
    return out


# -------------------- characteristic / minimal polynomials --------------------

def charpoly(m):
    """Exact characteristic polynomial, ascending coefficients, monic.

    Faddeev-LeVerrier recursion; valid in characteristic zero.
    """
    ring = m.ring
    n = m.n
    ident = Mat.identity(ring, n)
    c = [ring.zero] * (n + 1)
    c[n] = ring.one
    M = Mat.zeros(ring, n)
    for k in range(1, n + 1):
        M = m * (M + ident * c[n - k + 1])
        c[n - k] = ring.neg(ring.mul(M.trace(), ring.inv(ring.from_int(k))))
    return tuple(c)


def minpoly(m):
    """Exact minimal polynomial, ascending coefficients, monic."""
    ring = m.ring
    basis = []  # (reduced flat vector, expression over powers)
    power = Mat.identity(ring, m.n)
    k = 0
    while True:
        v = list(power.flatten())
        expr = [ring.zero] * (k + 1)
        expr[k] = ring.one
        for red, rexpr in basis:
            pc = next(i for i, x in enumerate(red) if not ring.is_zero(x))
            if not ring.is_zero(v[pc]):
                fac = v[pc]
                v = [ring.sub(x, ring.mul(fac, y)) for x, y in zip(v, red)]
                for i, y in enumerate(rexpr):
                    expr[i] = ring.sub(expr[i], ring.mul(fac, y))
        if all(ring.is_zero(x) for x in v):
            return poly_trim(expr, ring.is_zero)
        piv = next(i for i, x in enumerate(v) if not ring.is_zero(x))
        inv = ring.inv(v[piv])
        v = [ring.mul(x, inv) for x in v]
        expr = [ring.mul(x, inv) for x in expr] + [ring.zero]
        basis.append((tuple(v), expr))
        power = power * m
        k += 1
        if k > m.n ** 2 + 1:
            raise GroupRankError("minimal polynomial search failed to terminate")


def poly_on_matrix(coeffs, m):
    ring = m.ring
    acc = Mat.zeros(ring, m.n)
    for c in reversed(coeffs):
        acc = acc * m + Mat.identity(ring, m.n) * c
    return acc


def is_semisimple(m):
    """True iff the minimal polynomial is squarefree (separable; char 0)."""
    mp = minpoly(m)
    ring = m.ring
    return len(poly_gcd(ring, mp, poly_deriv(ring, mp))) == 1


def is_nilpotent_matrix(m):
    p = m
    for _ in range(m.n):
        if p.is_zero():
            return True
        p = p * m
    return p.is_zero()


def is_unipotent(m):
    return is_nilpotent_matrix(m - Mat.identity(m.ring, m.n))


# -------------------- Jordan decomposition --------------------

def jordan_decomposition(h):
    """Commuting factorization h = h_s * h_u with h_s semisimple, h_u unipotent.

    Newton refinement of h toward the root set of the squarefree part of its
    minimal polynomial; runs entirely over the ground field, and both parts
    are polynomial expressions in h.
    """
    ring = h.ring
    n = h.n
    if ring.is_zero(h.det()):
        raise GroupRankError("jordan_decomposition requires an invertible matrix")
    mp = minpoly(h)
    rad = poly_squarefree_part(ring, mp)
    if rad == mp:
        return h, Mat.identity(ring, n)
    radp = poly_deriv(ring, rad)
    x = h
    for _ in range(n + 2):
        gx = poly_on_matrix(rad, x)
        if gx.is_zero():
            break
        x = x - gx * poly_on_matrix(radp, x).inverse()
    else:
        raise GroupRankError("Jordan refinement failed to converge")
    hs = x
    hu = hs.inverse() * h
    if not is_unipotent(hu):
        raise GroupRankError("Jordan decomposition produced a non-unipotent part")
    return hs, hu


# -------------------- nilpotent log / exp --------------------

def nilpotent_log(u):
    """Exact log of a unipotent matrix (finite series)."""
    ring = u.ring
    n = u.n
    nmat = u - Mat.identity(ring, n)
    if not is_nilpotent_matrix(nmat):
        raise GroupRankError("nilpotent_log requires a unipotent matrix")
    acc = Mat.zeros(ring, n)
    power = Mat.identity(ring, n)
    for k in range(1, n):
        power = power * nmat
        if power.is_zero():
            break
        coeff = ring.inv(ring.from_int(k if k % 2 == 1 else -k))
        acc = acc + power * coeff
    return acc


def nilpotent_exp(x):
    """Exact exp of a nilpotent matrix (finite series)."""
    ring = x.ring
    n = x.n
    if not is_nilpotent_matrix(x):
        raise GroupRankError("nilpotent_exp requires a nilpotent matrix")
    acc = Mat.identity(ring, n)
    power = Mat.identity(ring, n)
    fact = 1
    for k in range(1, n):
        power = power * x
        if power.is_zero():
            break
        fact *= k
        acc = acc + power * ring.inv(ring.from_int(fact))
    return acc


# -------------------- restriction of scalars --------------------

def regular_representation(h, spec):
    """Blow up a matrix over Q(alpha) to an nm x nm rational matrix.

    Each entry is replaced by its m x m multiplication matrix on the power
    basis; the map is an exact ring homomorphism.
    """
    if not isinstance(spec, NumberFieldSpec):
        raise GroupRankError("regular_representation needs a NumberFieldSpec")
    m = spec.degree
    n = h.n
    out = [[QF(0)] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(n):
            block = spec.mul_matrix(h.rows[i][j])
            for a in range(m):
                for b in range(m):
                    out[i * m + a][j * m + b] = block[a][b]
    return Mat(QQ, out)
