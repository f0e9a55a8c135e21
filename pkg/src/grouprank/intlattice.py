"""Integer lattice utilities: Hermite/Smith forms, kernels, saturation, LLL.

Lattices are given by lists of integer row vectors; the Hermite normal form
is the canonical basis used throughout (pivots positive, entries above a
pivot reduced into [0, pivot)).
"""

from .errors import GroupRankError
from .numberfield import QF, QQ
from .matrix import nullspace


def xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows, transform=False):
    """Row-style HNF of an integer matrix; zero rows dropped.

    With ``transform=True`` also returns a unimodular U with U*A row-equal to
    the HNF stacked above the zero rows (U rows beyond the rank describe the
    left kernel of A).
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if transform:
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            while a[i][c] != 0:
                if a[i][c] % a[r][c] == 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [y - q * x for x, y in zip(a[r], a[i])]
                    if transform:
                        u[i] = [y - q * x for x, y in zip(u[r], u[i])]
                    continue
                g, s, t = xgcd(a[r][c], a[i][c])
                p, q = a[r][c] // g, a[i][c] // g
                row_r = [s * x + t * y for x, y in zip(a[r], a[i])]
                row_i = [-q * x + p * y for x, y in zip(a[r], a[i])]
                a[r], a[i] = row_r, row_i
                if transform:
                    ur = [s * x + t * y for x, y in zip(u[r], u[i])]
                    ui = [-q * x + p * y for x, y in zip(u[r], u[i])]
                    u[r], u[i] = ur, ui
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if transform:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if transform:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == m:
            break
    basis = tuple(tuple(row) for row in a[:r])
    if transform:
        return basis, [tuple(row) for row in u], r
    return basis


def integer_kernel(rows, ncols):
    """HNF basis of {x in Z^ncols : M x = 0} for M given by rows."""
    if not rows:
        ident = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
        return hermite_normal_form(ident)
    at = [[int(rows[i][j]) for i in range(len(rows))] for j in range(ncols)]
    _, u, r = hermite_normal_form(at, transform=True)
    kern = u[r:]
    return hermite_normal_form(kern) if kern else ()


def smith_normal_form(rows):
    """Nonzero diagonal invariants d1 | d2 | ... of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return ()
    m, n = len(a), len(a[0])
    res = []
    top = 0
    while top < min(m, n):
        # find a nonzero entry to use as pivot
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        while True:
            # clear the pivot column; the combine step strictly shrinks the
            # pivot unless it already divides, so the alternation terminates
            for i in range(top + 1, m):
                while a[i][top] != 0:
                    if a[i][top] % a[top][top] == 0:
                        q = a[i][top] // a[top][top]
                        a[i] = [y - q * x for x, y in zip(a[top], a[i])]
                        continue
                    g, s, t = xgcd(a[top][top], a[i][top])
                    p, q = a[top][top] // g, a[i][top] // g
                    rt = [s * x + t * y for x, y in zip(a[top], a[i])]
                    ri = [-q * x + p * y for x, y in zip(a[top], a[i])]
                    a[top], a[i] = rt, ri
            # clear the pivot row
            for j in range(top + 1, n):
                while a[top][j] != 0:
                    if a[top][j] % a[top][top] == 0:
                        q = a[top][j] // a[top][top]
                        for row in a:
                            row[j] = row[j] - q * row[top]
                        continue
                    g, s, t = xgcd(a[top][top], a[top][j])
                    p, q = a[top][top] // g, a[top][j] // g
                    for row in a:
                        x, y = row[top], row[j]
                        row[top], row[j] = s * x + t * y, -q * x + p * y
            if all(a[i][top] == 0 for i in range(top + 1, m)):
                break
        # enforce divisibility: pivot must divide the rest of the block
        d = a[top][top]
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[top] = [x + y for x, y in zip(a[top], a[offender])]
            continue
        res.append(abs(d))
        top += 1
    # normalize the chain so successive invariants divide
    for i in range(len(res)):
        for j in range(i + 1, len(res)):
            g = _gcd(res[i], res[j])
            l = res[i] * res[j] // g if g else 0
            res[i], res[j] = g, l
    return tuple(d for d in res if d != 0)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def lattice_member(rows_hnf, vec):
    """Membership of an integer vector in the lattice with the given HNF basis."""
    v = list(map(int, vec))
    for row in rows_hnf:
        pc = next(i for i, x in enumerate(row) if x != 0)
        if v[pc] % row[pc] != 0:
            return False
        q = v[pc] // row[pc]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def lattices_equal(rows_a, rows_b):
    return hermite_normal_form(rows_a) == hermite_normal_form(rows_b)


def saturate_lattice(rows, ncols):
    """Smallest saturated (pure) sublattice of Z^ncols containing the rows."""
    if not rows:
        return ()
    frac_rows = [tuple(QF(x) for x in r) for r in rows]
    # row span over Q equals the orthogonal complement of nullspace(rows)
    kern = nullspace(QQ, frac_rows, ncols)
    if not kern:
        ident = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
        return hermite_normal_form(ident)
    constraint = []
    for v in kern:
        den = 1
        for x in v:
            d = int(x.denominator)
            den = den * d // _gcd(den, d)
        constraint.append([int(x * den) for x in v])
    return integer_kernel(constraint, ncols)


def lattice_rank(rows):
    return len(hermite_normal_form(rows))


# -------------------- LLL reduction --------------------

def lll_reduce(rows, delta=QF(3, 4)):
    """LLL-reduced basis of the lattice spanned by independent integer rows."""
    b = [list(map(int, r)) for r in rows]
    n = len(b)
    if n <= 1:
        return [tuple(r) for r in b]

    def dot(u, v):
        return sum(QF(x) * y for x, y in zip(u, v))

    def gso():
        bstar = []
        mu = [[QF(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            v = [QF(x) for x in b[i]]
            for j in range(i):
                if norms[j] == 0:
                    mu[i][j] = QF(0)
                    continue
                mu[i][j] = dot(b[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return bstar, mu, norms

    bstar, mu, norms = gso()
    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 100000:
            raise GroupRankError("LLL failed to terminate")
        for j in range(k - 1, -1, -1):
            q = mu[k][j]
            r = int(q + QF(1, 2)) if q >= 0 else -int(-q + QF(1, 2))
            if r:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                bstar, mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu, norms = gso()
            k = max(k - 1, 1)
    return [tuple(r) for r in b]
