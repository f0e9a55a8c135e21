"""Ranks and presentations of completely reducible abelian matrix groups.

Commuting semisimple generators diagonalize simultaneously over a splitting
field; the group embeds into tuples of nonzero field elements indexed by the
common eigenspaces.  Its relation lattice is computed in two stages:

* exact integer homomorphism rows (prime-ideal valuations, norm valuations)
  cut the search to a kernel sublattice, and
* within that kernel, candidate unit relations are found by lattice
  reduction on certified log embeddings and verified by exact arithmetic;
  completeness is certified when the verified relation rank meets the
  interval-certified rank lower bound of the log matrix.

Torsion is then resolved exactly through root-of-unity orders, so the final
lattice is the full relation lattice, never an approximation.  Every
accepted relation is re-checked by exact matrix multiplication.
"""

import sympy
from mpmath import iv, mp, mpf

from .errors import GroupRankError, ImageBudgetExceeded, UncertifiedError, UnknownVerdict
from .matrix import Mat, Subspace, charpoly, is_semisimple, nullspace
from .intlattice import (
    hermite_normal_form,
    integer_kernel,
    lll_reduce,
    saturate_lattice,
    smith_normal_form,
)
from .congruence import (
    DEFAULT_BUDGET,
    Presentation,
    cyclic_canonical,
    enumerate_image,
    evaluate_word,
    free_reduce,
    reduce_matrix,
    schreier_presentation,
    select_prime,
    word_inverse,
)
from .splitting import factor_over_field, splitting_field_containing
from .unipotent import to_rational_matrix
from .valuations import valuation_rows

PRECISION_LADDER = (128, 256, 512)


# -------------------- torsion of field elements --------------------

def torsion_order_bound(degree):
    """Largest possible order of a root of unity in a field of this degree."""
    best = 2
    for w in range(1, max(200, 3 * degree * degree)):
        if sympy.totient(w) <= degree:
            best = max(best, w)
    return best


def element_torsion_order(e, spec, bound=None):
    """Exact multiplicative order of a field element, or None if infinite."""
    if spec.is_zero(e):
        raise GroupRankError("torsion order of zero")
    if bound is None:
        bound = torsion_order_bound(spec.degree)
    nm = spec.norm(e)
    if nm != 1 and nm != -1:
        return None
    cur = e
    for w in range(1, bound + 1):
        if cur == spec.one:
            return w
        cur = spec.mul(cur, e)
    return None


def tuple_torsion_orders(tup, spec, bound=None):
    """Component orders of a tuple of field elements, or None if any is infinite."""
    if bound is None:
        bound = torsion_order_bound(spec.degree)
    orders = []
    for comp in tup:
        o = element_torsion_order(comp, spec, bound)
        if o is None:
            return None
        orders.append(o)
    return orders


# -------------------- eigenvalue data --------------------

class EigenData:
    """Simultaneous eigenvalue tuples of commuting semisimple generators.

    ``tuples[i][l]`` is the eigenvalue of generator i on the l-th common
    eigenspace, an element of the splitting field; componentwise products
    mirror group multiplication, and the tuple map is injective.
    """

    def __init__(self, spec, splitting, gens, tuples, eigenspaces):
        self.spec = spec
        self.splitting = splitting
        self.gens = gens
        self.tuples = tuples
        self.eigenspaces = eigenspaces
        self.k = len(gens)
        self.s = len(eigenspaces)


def eigen_data(gens, spec):
    """Simultaneous eigenspace decomposition over a splitting field.

    Rejects non-commuting or non-semisimple input; callers should first pass
    to a completely reducible part.
    """
    if not gens:
        raise GroupRankError("eigen_data needs at least one generator")
    n = gens[0].n
    for i, g in enumerate(gens):
        if spec.is_zero(g.det()):
            raise GroupRankError("generator is singular")
        if not is_semisimple(g):
            raise GroupRankError("generator %d is not semisimple; "
                                 "compute a completely reducible part first" % i)
        for h in gens[i + 1:]:
            if g * h != h * g:
                raise GroupRankError("generators do not commute; "
                                     "compute a completely reducible part first")
    charpolys = [charpoly(g) for g in gens]
    containers = []
    for g in gens:
        rr = to_rational_matrix(g, spec)
        containers.append(charpoly(rr))
    sf = splitting_field_containing(spec, containers)
    E = sf.spec
    gens_e = [Mat(E, [[sf.embed_element(x) for x in row] for row in g.rows]) for g in gens]
    spaces = [(Subspace.full(E, n), ())]
    ident = Mat.identity(E, n)
    for gi, ge in enumerate(gens_e):
        cp_e = tuple(sf.embed_element(c) for c in charpolys[gi])
        factors = factor_over_field(cp_e, E)
        lams = []
        for fac, _mult in factors:
            if len(fac) != 2:
                raise GroupRankError("internal: splitting field does not split "
                                     "a characteristic polynomial")
            lams.append(E.neg(fac[0]))
        new_spaces = []
        for (w, picked) in spaces:
            covered = 0
            for lam in lams:
                shifted = ge - ident * lam
                eig = Subspace(E, n, nullspace(E, shifted.rows, n))
                inter = w.intersect(eig)
                if not inter.is_zero():
                    covered += inter.dim
                    new_spaces.append((inter, picked + (lam,)))
            if covered != w.dim:
                raise GroupRankError("internal: eigenspaces do not refine the space")
        spaces = new_spaces
    tuples = []
    for i in range(len(gens)):
        tuples.append(tuple(picked[i] for (_w, picked) in spaces))
    eigenspaces = [w for (w, _p) in spaces]
    return EigenData(spec, sf, gens, tuples, eigenspaces)


# -------------------- the relation lattice --------------------

class RelationLattice:
    """Integer lattice of multiplicative relations among the generators.

    ``basis`` rows (Hermite normal form) evaluate to the identity matrix
    exactly; ``sat_basis`` spans relations-up-to-torsion.  ``certified``
    records whether completeness was established.
    """

    def __init__(self, k, basis, certified, sat_basis=(), diagnostics=None, gens=None):
        self.k = k
        self.basis = tuple(tuple(r) for r in basis)
        self.certified = certified
        self.sat_basis = tuple(tuple(r) for r in sat_basis)
        self.diagnostics = diagnostics
        self._gens = gens

    @property
    def rank(self):
        return len(self.basis)

    @property
    def torsion_free_rank(self):
        return self.k - len(self.basis)

    @property
    def has_torsion(self):
        return hermite_normal_form(self.basis) != hermite_normal_form(self.sat_basis)

    def verify(self):
        """Exact check: every basis row multiplies out to the identity."""
        if self._gens is None:
            return False
        for row in self.basis:
            if not _matrix_power_product(self._gens, row).is_identity():
                return False
        return True

    def __repr__(self):
        return "RelationLattice(k=%d, rank=%d, certified=%r)" % (self.k, self.rank, self.certified)


def _matrix_power_product(gens, exps):
    out = Mat.identity(gens[0].ring, gens[0].n)
    for g, e in zip(gens, exps):
        if e:
            out = out * (g ** int(e))
    return out


def _tuple_power_product(tuples, exps, spec):
    s = len(tuples[0])
    out = []
    for l in range(s):
        acc = spec.one
        for tup, e in zip(tuples, exps):
            if e:
                acc = spec.mul(acc, spec.pow(tup[l], int(e)))
        out.append(acc)
    return tuple(out)


_rl_cache = {}


def relation_lattice(ed, precision_ladder=PRECISION_LADDER):
    """The full relation lattice of the eigen-tuples, certified or not.

    Never numeric-accepts: every relation in the result was verified by
    exact arithmetic, and certification only asserts completeness.
    """
    key = (ed.spec.minpoly, tuple(g.rows for g in ed.gens), tuple(precision_ladder))
    if key in _rl_cache:
        return _rl_cache[key]
    out = _relation_lattice_uncached(ed, precision_ladder)
    _rl_cache[key] = out
    return out


def _relation_lattice_uncached(ed, precision_ladder):
    E = ed.splitting.spec
    k = ed.k
    bound = torsion_order_bound(E.degree)

    rows = []
    for l in range(ed.s):
        elements = [ed.tuples[i][l] for i in range(k)]
        rows.extend(valuation_rows(elements, E))
    basis0 = integer_kernel(rows, k) if rows else hermite_normal_form(
        [[1 if i == j else 0 for j in range(k)] for i in range(k)])
    t = len(basis0)
    if t == 0:
        lat = RelationLattice(k, (), True, (), gens=ed.gens)
        return lat
    basis = list(lll_reduce(list(basis0))) if t > 1 else [tuple(basis0[0])]
    units = [_tuple_power_product(ed.tuples, b, E) for b in basis]
    orders = [tuple_torsion_orders(u, E, bound) for u in units]
    if all(o is not None for o in orders):
        sat = hermite_normal_form(basis)
        final, sat_h = _resolve_torsion(ed, sat, bound)
        lat = RelationLattice(k, final, True, sat_h, gens=ed.gens)
        _verify_final(lat)
        return lat

    verified = [tuple(1 if i == j else 0 for i in range(t))
                for j, o in enumerate(orders) if o is not None]
    diagnostics = None
    for prec in precision_ladder:
        try:
            rel_rows, lower = _stage_two(ed, units, basis, verified, prec, bound, E)
        except UncertifiedError as exc:
            diagnostics = str(exc)
            continue
        if rel_rows is None:
            diagnostics = "rank certificate short at %d bits" % prec
            continue
        sat_rows = [_row_times_basis(c, basis) for c in rel_rows]
        sat = hermite_normal_form(sat_rows) if sat_rows else ()
        for row in sat:
            u = _tuple_power_product(ed.tuples, row, E)
            if tuple_torsion_orders(u, E, bound) is None:
                raise GroupRankError("internal: certified relation is not torsion")
        final, sat_h = _resolve_torsion(ed, sat, bound)
        lat = RelationLattice(k, final, True, sat_h, gens=ed.gens)
        _verify_final(lat)
        return lat
    lat = RelationLattice(k, hermite_normal_form(
        [_row_times_basis(c, basis) for c in verified]) if verified else (),
        False, (), diagnostics=diagnostics or "precision ladder exhausted", gens=ed.gens)
    return lat


def _row_times_basis(c, basis):
    t = len(basis)
    k = len(basis[0])
    return tuple(sum(c[j] * basis[j][i] for j in range(t)) for i in range(k))


def _stage_two(ed, units, basis, verified_seed, prec, bound, E):
    """Candidate search plus certification at one precision level.

    Returns (relation rows over the kernel basis, certified unit rank) or
    (None, info) when the certificate falls short at this precision.
    """
    from .embeddings import (
        IntervalIndeterminate,
        certified_roots,
        log_abs_interval,
        interval_matrix_rank_at_least,
    )

    t = len(basis)
    old_iv, old_mp = iv.prec, mp.prec
    try:
        iv.prec = prec + 64
        mp.prec = prec + 64
        try:
            if E.degree == 1:
                boxes = [None]
            else:
                boxes = certified_roots(E.minpoly, prec)
            log_rows = []
            for u in units:
                row = []
                for comp in u:
                    if E.degree == 1:
                        q = comp[0]
                        row.append(iv.log(abs(iv.mpf(int(q.numerator)))
                                          / abs(iv.mpf(int(q.denominator)))))
                    else:
                        for box in boxes:
                            row.append(log_abs_interval(list(comp), box))
                log_rows.append(row)
        except IntervalIndeterminate as exc:
            raise UncertifiedError(str(exc))

        scale = 1 << (prec // 2)
        lll_rows = []
        for j in range(t):
            entries = [1 if i == j else 0 for i in range(t)]
            for x in log_rows[j]:
                m = mpf(x.mid) * scale
                entries.append(int(mp.nint(m)))
            lll_rows.append(entries)
        reduced = lll_reduce(lll_rows)
        candidates = list(verified_seed)
        for row in reduced:
            c = tuple(row[:t])
            if any(c):
                candidates.append(c)
                candidates.append(tuple(-x for x in c))
        verified = []
        seen = set()
        for c in candidates:
            if c in seen:
                continue
            seen.add(c)
            u = _tuple_power_product(ed.tuples, _row_times_basis(c, basis), E)
            if tuple_torsion_orders(u, E, bound) is not None:
                verified.append(c)
        rel = hermite_normal_form(verified) if verified else ()
        need = t - len(rel)
        if need == 0:
            return list(rel), 0
        try:
            ok = interval_matrix_rank_at_least(log_rows, need)
        except IntervalIndeterminate as exc:
            raise UncertifiedError(str(exc))
        if not ok:
            return None, need
        full = saturate_lattice(list(rel), t) if rel else ()
        return list(full), need
    finally:
        iv.prec = old_iv
        mp.prec = old_mp


def _resolve_torsion(ed, sat_basis, bound):
    """Refine the saturated lattice to the exact relation lattice by solving
    discrete logarithms among the root-of-unity values of its basis rows."""
    E = ed.splitting.spec
    sat = hermite_normal_form(sat_basis) if sat_basis else ()
    big_r = len(sat)
    if big_r == 0:
        return (), ()
    tors = []
    for row in sat:
        u = _tuple_power_product(ed.tuples, row, E)
        orders = tuple_torsion_orders(u, E, bound)
        if orders is None:
            raise GroupRankError("internal: saturated basis row is not torsion")
        tors.append((u, orders))
    constraints = []
    moduli = []
    for l in range(ed.s):
        comp_orders = [orders[l] for (_u, orders) in tors]
        d_l = 1
        for o in comp_orders:
            d_l = sympy.ilcm(d_l, o)
        d_l = int(d_l)
        if d_l == 1:
            continue
        gen = E.one
        gen_order = 1
        for (u, orders) in tors:
            gen, gen_order = _combine_cyclic(gen, gen_order, u[l], orders[l], E)
        if gen_order != d_l:
            raise GroupRankError("internal: cyclic combination failed")
        dlogs = []
        for (u, orders) in tors:
            dlogs.append(_discrete_log(gen, gen_order, u[l], E))
        constraints.append(dlogs)
        moduli.append(d_l)
    if not constraints:
        return sat, sat
    ncols = big_r + len(moduli)
    aug = []
    for li, dlogs in enumerate(constraints):
        row = list(dlogs) + [0] * len(moduli)
        row[big_r + li] = -moduli[li]
        aug.append(row)
    kern = integer_kernel(aug, ncols)
    proj = [row[:big_r] for row in kern]
    proj_h = hermite_normal_form(proj) if proj else ()
    final_rows = [_row_times_basis(c, list(sat)) for c in proj_h]
    return hermite_normal_form(final_rows) if final_rows else (), sat


def _combine_cyclic(x, ox, y, oy, spec):
    """An element of order lcm(ox, oy) inside the cyclic group the two
    torsion elements generate."""
    l = int(sympy.ilcm(ox, oy))
    z = spec.one
    for p, e in sympy.factorint(l).items():
        q = int(p) ** int(e)
        if ox % q == 0:
            z = spec.mul(z, spec.pow(x, ox // q))
        else:
            z = spec.mul(z, spec.pow(y, oy // q))
    return z, l


def _discrete_log(gen, order, target, spec):
    cur = spec.one
    for j in range(order):
        if cur == target:
            return j
        cur = spec.mul(cur, gen)
    raise GroupRankError("internal: discrete log failed in cyclic group")


def _verify_final(lat):
    if not lat.verify():
        raise GroupRankError("internal: relation lattice verification failed")


# -------------------- ranks and presentations of abelian groups --------------------

def abelian_rank(gens, spec, precision_ladder=PRECISION_LADDER):
    """(torsion-free rank h, torsion flag epsilon) of a completely reducible
    abelian matrix group; the Prufer rank is h + epsilon."""
    if not gens:
        return 0, 0
    nontrivial = [g for g in gens if not g.is_identity()]
    if not nontrivial:
        return 0, 0
    ed = eigen_data(nontrivial, spec)
    lat = relation_lattice(ed, precision_ladder)
    if not lat.certified:
        raise UncertifiedError(lat.diagnostics)
    return lat.torsion_free_rank, 1 if lat.has_torsion else 0


class AbelianPresentation:
    """Invariants of a finitely generated abelian group: free rank plus the
    elementary divisor chain."""

    def __init__(self, rank, divisors):
        self.rank = rank
        self.divisors = tuple(int(d) for d in divisors)
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a != 0:
                raise GroupRankError("divisor chain is not a chain")

    def __eq__(self, other):
        return (isinstance(other, AbelianPresentation)
                and self.rank == other.rank and self.divisors == other.divisors)

    def __repr__(self):
        return "AbelianPresentation(rank=%d, divisors=%r)" % (self.rank, self.divisors)


def abelian_presentation(gens, spec, precision_ladder=PRECISION_LADDER):
    """Smith-normal-form presentation of a completely reducible abelian group."""
    if not gens:
        return AbelianPresentation(0, ())
    nontrivial = [g for g in gens if not g.is_identity()]
    if not nontrivial:
        return AbelianPresentation(0, ())
    ed = eigen_data(nontrivial, spec)
    lat = relation_lattice(ed, precision_ladder)
    if not lat.certified:
        raise UncertifiedError(lat.diagnostics)
    divisors = [d for d in smith_normal_form(lat.basis) if d > 1] if lat.basis else []
    return AbelianPresentation(lat.torsion_free_rank, divisors)


# -------------------- completely reducible groups --------------------

def _solve_in_row_lattice(rows, target):
    """Integer combination c with c * rows = target, or None."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return [] if all(x == 0 for x in target) else None
    h, u, r = hermite_normal_form(rows, transform=True)
    v = list(target)
    coeffs = [0] * r
    for idx, row in enumerate(h):
        pc = next(i for i, x in enumerate(row) if x != 0)
        if v[pc] % row[pc] != 0:
            return None
        q = v[pc] // row[pc]
        coeffs[idx] = q
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    combo = [0] * len(rows)
    for idx, q in enumerate(coeffs):
        if q:
            combo = [a + q * b for a, b in zip(combo, u[idx])]
    return combo


class CRGroupData:
    """Congruence and kernel data for a completely reducible group.

    The congruence kernel of such a group is abelian; its normal generators
    are closed under conjugation using exact membership tests, so the final
    list generates the kernel itself (not merely a finite-index subgroup).
    """

    def __init__(self, gens, spec, prime=None, budget=DEFAULT_BUDGET,
                 precision_ladder=PRECISION_LADDER):
        self.gens = list(gens)
        self.spec = spec
        self.precision_ladder = tuple(precision_ladder)
        self.site = select_prime(self.gens, spec, prime)
        imgs = [reduce_matrix(g, self.site) for g in self.gens]
        try:
            self.image = enumerate_image(imgs, budget)
        except ImageBudgetExceeded as exc:
            raise UnknownVerdict("budget", str(exc))
        self.presentation = schreier_presentation(self.image)
        self.kernel = self._close_kernel()

    def _close_kernel(self):
        gens = self.gens
        spec = self.spec
        pairs = []
        seen = set()
        for w in self.presentation.relators:
            m = evaluate_word(w, gens)
            if not m.is_identity() and m not in seen:
                seen.add(m)
                pairs.append((w, m))
        if not pairs:
            return []
        conj = [(g, g.inverse()) for g in gens]
        for _ in range(64):
            cands = []
            cseen = set(m for (_w, m) in pairs)
            for (w, m) in pairs:
                for gi, (g, ginv) in enumerate(conj):
                    for cw, cm in (
                        (((gi, -1),) + w + ((gi, 1),), ginv * m * g),
                        (((gi, 1),) + w + ((gi, -1),), g * m * ginv),
                    ):
                        if not cm.is_identity() and cm not in cseen:
                            cseen.add(cm)
                            cands.append((free_reduce(cw), cm))
            if not cands:
                return pairs
            base_mats = [m for (_w, m) in pairs]
            mats = base_mats + [m for (_w, m) in cands]
            lat = self._lattice_for(mats)
            newly = []
            nbase = len(base_mats)
            for j, (cw, cm) in enumerate(cands):
                pattern = [0] * len(cands)
                pattern[j] = -1
                restricted = [row[nbase:] for row in lat.basis]
                if _solve_in_row_lattice(restricted, pattern) is None:
                    newly.append((cw, cm))
            if not newly:
                return pairs
            pairs.extend(newly)
        raise GroupRankError("internal: kernel closure failed to stabilize")

    def _lattice_for(self, mats):
        ed = eigen_data(mats, self.spec)
        lat = relation_lattice(ed, self.precision_ladder)
        if not lat.certified:
            raise UncertifiedError(lat.diagnostics)
        return lat

    def kernel_matrices(self):
        return [m for (_w, m) in self.kernel]

    def kernel_exponents(self, targets):
        """Exponent vectors expressing each target over the kernel generators;
        None entries mean not a member."""
        base = self.kernel_matrices()
        if not base:
            return [None if not t.is_identity() else [] for t in targets]
        work = [t for t in targets if not t.is_identity()]
        out = []
        if work:
            lat = self._lattice_for(base + work)
            nbase = len(base)
            restricted = [row[nbase:] for row in lat.basis]
            widx = 0
            for t in targets:
                if t.is_identity():
                    out.append([0] * nbase)
                    continue
                pattern = [0] * len(work)
                pattern[widx] = -1
                widx += 1
                combo = _solve_in_row_lattice(restricted, pattern)
                if combo is None:
                    out.append(None)
                    continue
                full = [0] * (nbase + len(work))
                for c, row in zip(combo, lat.basis):
                    if c:
                        full = [a + c * b for a, b in zip(full, row)]
                out.append(full[:nbase])
        else:
            out = [[0] * len(base) for _t in targets]
        return out


def completely_reducible_rank(gens, spec, prime=None, budget=DEFAULT_BUDGET,
                              precision_ladder=PRECISION_LADDER, data=None):
    """Hirsch number of a completely reducible group: the congruence kernel
    is abelian of finite index, and its torsion-free rank is computed from
    the exact relation lattice of its full generator closure."""
    if data is None:
        data = CRGroupData(gens, spec, prime, budget, precision_ladder)
    mats = data.kernel_matrices()
    if not mats:
        return 0
    h, _eps = abelian_rank(mats, spec, precision_ladder)
    return h


def _aux_word(start_index, exps):
    out = []
    for j, e in enumerate(exps):
        if e:
            sign = 1 if e > 0 else -1
            out.extend(((start_index + j, sign),) * abs(e))
    return tuple(out)


def _canon_with_inverse(w):
    a = cyclic_canonical(w)
    b = cyclic_canonical(word_inverse(w))
    return min(a, b)


def completely_reducible_presentation(gens, spec, prime=None, budget=DEFAULT_BUDGET,
                                      precision_ladder=PRECISION_LADDER, data=None):
    """Presentation of a completely reducible group as an extension of its
    finite congruence image by the abelian kernel.

    Generators are the input generators followed by the kernel generators;
    each kernel generator carries its defining word, so relators can be
    rewritten over the input generators alone.  Every relator is verified to
    evaluate to the identity exactly.
    """
    if data is None:
        data = CRGroupData(gens, spec, prime, budget, precision_ladder)
    r = len(gens)
    kernel = data.kernel
    definitions = {r + j: w for j, (w, _m) in enumerate(kernel)}
    relators = []
    seen = set()

    def add(word):
        w = free_reduce(word)
        if not w:
            return
        key = _canon_with_inverse(w)
        if key and key not in seen:
            seen.add(key)
            relators.append(w)

    # image relators, rewritten through the kernel
    kappas = [evaluate_word(w, gens) for w in data.presentation.relators]
    expos = data.kernel_exponents(kappas)
    for w, kappa, e in zip(data.presentation.relators, kappas, expos):
        if e is None:
            raise GroupRankError("internal: image relator value is not in the kernel closure")
        add(w + word_inverse(_aux_word(r, e)))

    # conjugation relators
    conj = [(g, g.inverse()) for g in gens]
    targets = []
    labels = []
    for j, (_w, m) in enumerate(kernel):
        for gi, (g, ginv) in enumerate(conj):
            targets.append(ginv * m * g)
            labels.append((j, gi, 1))
            targets.append(g * m * ginv)
            labels.append((j, gi, -1))
    expos = data.kernel_exponents(targets)
    for (j, gi, direction), e in zip(labels, expos):
        if e is None:
            raise GroupRankError("internal: kernel conjugate escaped the closure")
        add(((gi, -direction), (r + j, 1), (gi, direction)) + word_inverse(_aux_word(r, e)))

    # abelian relators of the kernel
    mats = data.kernel_matrices()
    if mats:
        ed = eigen_data(mats, spec)
        lat = relation_lattice(ed, precision_ladder)
        if not lat.certified:
            raise UncertifiedError(lat.diagnostics)
        for row in lat.basis:
            add(_aux_word(r, row))

    pres = Presentation(r + len(kernel), relators, definitions=definitions)
    if not pres.verify(gens):
        raise GroupRankError("internal: presentation relator fails to evaluate to identity")
    return pres
