"""Certified archimedean embeddings via interval arithmetic.

Roots of the defining polynomial are isolated in complex boxes validated by
an interval Newton step, so every derived quantity (log absolute values,
determinant signs) carries a rigorous enclosure.  Nothing numeric is ever
accepted as an answer: these intervals only certify rank lower bounds and
steer the search for candidate relations, which are verified exactly.
"""

from mpmath import iv, mp, mpf

from .errors import GroupRankError


class IntervalIndeterminate(GroupRankError):
    """An interval computation could not exclude zero at this precision."""


class CIV:
    """A rectangular complex interval (pair of real mpmath intervals)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def point(cls, z):
        return cls(iv.mpf(z.real if hasattr(z, "real") else z),
                   iv.mpf(z.imag if hasattr(z, "imag") else 0))

    @classmethod
    def from_fraction(cls, q):
        return cls(iv.mpf(int(q.numerator)) / iv.mpf(int(q.denominator)), iv.mpf(0))

    def __add__(self, other):
        return CIV(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CIV(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return CIV(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    def __neg__(self):
        return CIV(-self.re, -self.im)

    def abs2(self):
        return self.re ** 2 + self.im ** 2

    def reciprocal(self):
        d = self.abs2()
        if d.a <= 0:
            raise IntervalIndeterminate("division by an interval containing zero")
        return CIV(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * other.reciprocal()

    def contains(self, other):
        return (other.re in self.re) and (other.im in self.im)

    def widen(self, r):
        pad = iv.mpf([-r, r])
        return CIV(self.re + pad, self.im + pad)

    def mid(self):
        return (mpf(self.re.mid), mpf(self.im.mid))


def _eval_poly_civ(coeffs, z):
    """Horner evaluation of an integer/Fraction polynomial at a complex interval."""
    acc = CIV(iv.mpf(0), iv.mpf(0))
    for c in reversed(coeffs):
        if hasattr(c, "denominator") and c.denominator != 1:
            cc = CIV.from_fraction(c)
        else:
            cc = CIV(iv.mpf(int(c)), iv.mpf(0))
        acc = acc * z + cc
    return acc


def certified_roots(coeffs, prec_bits):
    """Disjoint complex boxes each containing exactly one root of the monic
    integer polynomial, certified by an interval Newton step."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return []
    old_mp, old_iv = mp.prec, iv.prec
    try:
        mp.prec = prec_bits + 64
        iv.prec = prec_bits + 64
        dcoeffs = [c * i for i, c in enumerate(coeffs)][1:]
        approx = mp.polyroots([mpf(c) for c in reversed(coeffs)], maxsteps=200,
                              extraprec=prec_bits)
        boxes = []
        for root in approx:
            box = _certify_one(coeffs, dcoeffs, root, prec_bits)
            boxes.append(box)
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if _boxes_overlap(boxes[i], boxes[j]):
                    raise IntervalIndeterminate("root boxes overlap at %d bits" % prec_bits)
        return boxes
    finally:
        mp.prec = old_mp
        iv.prec = old_iv


def _boxes_overlap(a, b):
    return not (a.re.b < b.re.a or b.re.b < a.re.a
                or a.im.b < b.im.a or b.im.b < a.im.a)


def _certify_one(coeffs, dcoeffs, root, prec_bits):
    base = CIV(iv.mpf(mpf(root.real)), iv.mpf(mpf(root.imag)))
    radius = mpf(2) ** (-(prec_bits // 2))
    for _ in range(40):
        box = base.widen(radius)
        try:
            fprime = _eval_poly_civ(dcoeffs, box)
            newton = base - _eval_poly_civ(coeffs, base) / fprime
        except IntervalIndeterminate:
            radius = radius / 4
            if radius < mpf(2) ** (-(prec_bits + 32)):
                break
            continue
        if box.contains(newton):
            return newton.widen(0)
        radius = radius * 2
        if radius > 1:
            break
    raise IntervalIndeterminate("could not certify a root box at %d bits" % prec_bits)


def log_abs_interval(coeffs_fractions, box):
    """Rigorous enclosure of log|e(theta)| for e given by its coefficients
    and theta by a certified root box."""
    val = _eval_poly_civ(coeffs_fractions, box)
    a2 = val.abs2()
    if a2.a <= 0:
        raise IntervalIndeterminate("log of an interval containing zero")
    return iv.log(a2) / 2


def interval_matrix_rank_at_least(rows, target):
    """Certify rank(rows) >= target by exhibiting a minor whose interval
    determinant excludes zero; rows are lists of iv.mpf."""
    if target <= 0:
        return True
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if target > min(nrows, ncols):
        return False
    mid = [[mpf(x.mid) for x in row] for row in rows]
    sel_rows, sel_cols = _greedy_pivot_select(mid, target)
    if sel_rows is None:
        return False
    sub = [[rows[i][j] for j in sel_cols] for i in sel_rows]
    return _interval_det_nonzero(sub)


def _greedy_pivot_select(mid, target):
    nrows = len(mid)
    ncols = len(mid[0])
    work = [row[:] for row in mid]
    rows_left = list(range(nrows))
    cols_left = list(range(ncols))
    sel_rows = []
    sel_cols = []
    for _ in range(target):
        best = None
        for i in rows_left:
            for j in cols_left:
                v = abs(work[i][j])
                if best is None or v > best[0]:
                    best = (v, i, j)
        if best is None or best[0] == 0:
            return None, None
        _, pi, pj = best
        sel_rows.append(pi)
        sel_cols.append(pj)
        rows_left.remove(pi)
        cols_left.remove(pj)
        piv = work[pi][pj]
        for i in rows_left:
            fac = work[i][pj] / piv
            if fac:
                for j in cols_left:
                    work[i][j] -= fac * work[pi][j]
    return sel_rows, sel_cols


def _interval_det_nonzero(sub):
    n = len(sub)
    a = [row[:] for row in sub]
    for k in range(n):
        piv_idx = None
        for i in range(k, n):
            x = a[i][k]
            if x.a > 0 or x.b < 0:
                piv_idx = i
                break
        if piv_idx is None:
            return False
        if piv_idx != k:
            a[k], a[piv_idx] = a[piv_idx], a[k]
        for i in range(k + 1, n):
            fac = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] = a[i][j] - fac * a[k][j]
    return True
