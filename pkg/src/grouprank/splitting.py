"""Splitting fields and polynomial factorization over number fields.

This is the one place the package leans on sympy: exact factorization over Q
and Q(theta), primitive elements, and membership of specific algebraic
numbers in a field.  Everything returned is converted back to the package's
own exact representations.
"""

import sympy
from sympy import CRootOf, Poly, QQ as SYMPY_QQ, symbols
from sympy.polys.numberfields import primitive_element, to_number_field
from sympy.polys.polyerrors import IsomorphismFailed

from .errors import GroupRankError, UncertifiedError
from .numberfield import NumberFieldSpec, QF, poly_trim

_X = symbols("x")
_Y = symbols("y")

DEGREE_CAP = 24

_field_cache = {}


def sympy_field(spec):
    """The sympy algebraic field QQ(theta) for a nonrational spec, cached."""
    key = spec.minpoly
    if key not in _field_cache:
        poly = Poly(list(reversed(key)), _X, domain="QQ")
        theta = CRootOf(poly, 0)
        _field_cache[key] = (SYMPY_QQ.algebraic_field(theta), theta)
    return _field_cache[key]


def _anp_to_element(anp, spec):
    desc = [QF(int(c.numerator), int(c.denominator)) for c in anp.to_list()]
    asc = list(reversed(desc))
    asc += [QF(0)] * (spec.degree - len(asc))
    return tuple(asc[: spec.degree])


def _element_to_anp(e, K):
    desc = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(e)]
    while desc and desc[0] == 0:
        desc.pop(0)
    return K(desc) if desc else K.zero


def factor_over_field(coeffs, spec):
    """Monic irreducible factors with multiplicity over Q(alpha).

    ``coeffs`` are ascending, elements of ``spec``; the result is a list of
    (ascending coefficient tuple, multiplicity) with monic factors.
    """
    coeffs = poly_trim(coeffs, spec.is_zero)
    if len(coeffs) < 2:
        return []
    if spec.is_rational:
        qs = [sympy.Rational(int(c[0].numerator), int(c[0].denominator)) for c in reversed(coeffs)]
        _, factors = Poly(qs, _Y, domain="QQ").factor_list()
        out = []
        for f, mult in factors:
            cs = [QF(int(c.numerator), int(c.denominator)) for c in f.all_coeffs()]
            lead = cs[0]
            cs = [c / lead for c in cs]
            out.append((tuple((c,) for c in reversed(cs)), mult))
        return out
    K, _ = sympy_field(spec)
    anp_desc = [_element_to_anp(c, K) for c in reversed(coeffs)]
    _, factors = Poly(anp_desc, _Y, domain=K).factor_list()
    out = []
    for f, mult in factors:
        anps = f.rep.to_list()
        elems = [_anp_to_element(a, spec) for a in anps]
        lead = elems[0]
        inv_lead = spec.inv(lead)
        elems = [spec.mul(c, inv_lead) for c in elems]
        out.append((tuple(reversed(elems)), mult))
    return out


def factor_rational_poly(coeffs):
    """Monic irreducible factors with multiplicity of a rational polynomial."""
    qs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)]
    _, factors = Poly(qs, _Y, domain="QQ").factor_list()
    out = []
    for f, mult in factors:
        cs = [QF(int(c.numerator), int(c.denominator)) for c in f.all_coeffs()]
        lead = cs[0]
        cs = [c / lead for c in cs]
        out.append((tuple(reversed(cs)), mult))
    return out


def _integerize_monic(coeffs):
    """Scale the roots of a monic rational polynomial by D so the minimal
    polynomial of D*root is monic with integer coefficients; returns
    (integer coeffs ascending, D)."""
    d = len(coeffs) - 1
    den = 1
    for c in coeffs:
        den = sympy.ilcm(den, int(c.denominator))
    den = int(den)
    out = []
    for i, c in enumerate(coeffs):
        scaled = c * den ** (d - i)
        assert scaled.denominator == 1
        out.append(int(scaled))
    return tuple(out), den


class SplittingField:
    """A common splitting field E = Q(theta) with the embedding of P.

    ``alpha_rep`` is alpha's image as an element of E, so elements and
    matrices over P transfer exactly into E.
    """

    def __init__(self, spec_P, spec_E, alpha_rep):
        self.spec_P = spec_P
        self.spec = spec_E
        self.alpha_rep = alpha_rep

    def embed_element(self, e):
        E = self.spec
        out = E.zero
        power = E.one
        for c in e:
            if c:
                out = E.add(out, E.mul(E.from_fraction(c), power))
            power = E.mul(power, self.alpha_rep)
        return out

    def embed_poly(self, coeffs):
        return tuple(self.embed_element(c) for c in coeffs)


def splitting_field_containing(spec_P, rational_polys, cap=DEGREE_CAP):
    """A number field containing P and every root of the given rational polys.

    The polynomials are monic with Fraction coefficients (ascending).  Roots
    are adjoined one at a time through sympy's primitive element machinery;
    exceeding the degree cap raises UncertifiedError.
    """
    needed = []
    if spec_P.degree > 1:
        needed.append(tuple(QF(c) for c in spec_P.minpoly))
    for poly in rational_polys:
        flat_in = [c[0] if isinstance(c, tuple) else QF(c) for c in poly]
        for fac, _ in factor_rational_poly(flat_in):
            if len(fac) >= 3:
                needed.append(tuple(fac))
    # dedupe, canonical order
    seen = []
    for f in sorted(set(needed), key=lambda f: (len(f), f)):
        seen.append(f)
    if not seen:
        spec_E = spec_P if spec_P.degree == 1 else spec_P
        return SplittingField(spec_P, spec_E, spec_E.alpha())

    roots = []
    for f in seen:
        g, scale = _integerize_monic(f)
        gpoly = Poly(list(reversed(g)), _X, domain="QQ")
        for idx in range(len(g) - 1):
            roots.append((CRootOf(gpoly, idx), f, scale))

    # alpha's own root must be tracked to build the embedding
    alpha_root = None
    if spec_P.degree > 1:
        fpoly = Poly(list(reversed(spec_P.minpoly)), _X, domain="QQ")
        alpha_root = CRootOf(fpoly, 0)

    gens = []
    theta = None
    min_coeffs = None

    def extend_with(expr):
        # theta is kept as the explicit integer combination of the adjoined
        # roots, so later membership tests refer to the same embedding
        nonlocal gens, theta, min_coeffs
        gens = gens + [expr]
        fpoly, combo, _ = primitive_element(gens, _X, ex=True)
        coeffs = [sympy.Rational(c) for c in Poly(fpoly, _X).all_coeffs()]
        if len(coeffs) - 1 > cap:
            raise UncertifiedError("splitting field degree %d exceeds cap %d"
                                   % (len(coeffs) - 1, cap))
        if any(c.denominator != 1 for c in coeffs) or coeffs[0] != 1:
            raise UncertifiedError("primitive element is not an algebraic integer")
        min_coeffs = tuple(int(c) for c in reversed(coeffs))
        theta = sympy.Add(*[sympy.Integer(c) * g for c, g in zip(combo, gens)])

    if alpha_root is not None:
        extend_with(alpha_root)
    for expr, _f, _scale in roots:
        if theta is None:
            try:
                extend_with(expr)
            except UncertifiedError:
                raise
            continue
        try:
            to_number_field(expr, theta)
        except IsomorphismFailed:
            extend_with(expr)

    if theta is None:
        spec_E = NumberFieldSpec.rationals()
        return SplittingField(spec_P, spec_E, spec_E.alpha())

    spec_E = NumberFieldSpec(min_coeffs)
    if spec_P.degree > 1:
        rep = to_number_field(alpha_root, theta)
        alpha_rep = _algebraic_to_element(rep, spec_E)
    else:
        alpha_rep = spec_E.zero
    sf = SplittingField(spec_P, spec_E, alpha_rep)
    # exact check: the embedding satisfies alpha's minimal polynomial
    E = spec_E
    acc = E.zero
    power = E.one
    for c in spec_P.minpoly:
        acc = E.add(acc, E.mul(E.from_int(c), power))
        power = E.mul(power, alpha_rep)
    if not E.is_zero(acc):
        raise GroupRankError("embedding of alpha fails its minimal polynomial")
    return sf


def _algebraic_to_element(rep, spec_E):
    """Convert a sympy AlgebraicNumber (over theta) to a coefficient tuple."""
    an = sympy.AlgebraicNumber(rep)
    desc = an.coeffs()
    asc = [QF(int(c.p), int(c.q)) for c in reversed(desc)]
    asc += [QF(0)] * (spec_E.degree - len(asc))
    return tuple(asc[: spec_E.degree])
