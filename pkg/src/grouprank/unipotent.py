"""Hirsch numbers of unipotent groups via nilpotent logarithms.

A finitely generated unipotent group over a number field embeds, after
restriction of scalars, into the rational unitriangular matrices; its
torsion-free rank equals the dimension of the Lie algebra generated by the
logarithms of its generators.  The radical rank runs the conjugate
saturation loop until that dimension stabilizes.
"""

from .errors import GroupRankError
from .numberfield import QQ
from .matrix import (
    Mat,
    is_unipotent,
    mat_from_flat,
    nilpotent_log,
    regular_representation,
    rref,
)


class LieSpan:
    """A bracket-closed span of nilpotent rational matrices."""

    def __init__(self, ambient, basis):
        self.ambient = ambient
        self.basis = list(basis)

    @property
    def dim(self):
        return len(self.basis)


def _lie_closure(mats):
    if not mats:
        return []
    n = mats[0].n
    rows = []  # (vector, pivot)
    inserted = []
    work = list(mats)
    while work:
        m = work.pop(0)
        v = list(m.flatten())
        for row, piv in rows:
            x = v[piv]
            if x:
                v = [a - x * b for a, b in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        rows.append((v, piv))
        rows.sort(key=lambda t: t[1])
        for b in inserted:
            work.append(m * b - b * m)
        inserted.append(m)
    red, _ = rref(QQ, [m.flatten() for m in inserted])
    return [mat_from_flat(QQ, n, r) for r in red]


def to_rational_matrix(g, spec):
    """A rational matrix realizing g: the identity for P = Q, otherwise the
    restriction of scalars to an nm x nm rational matrix."""
    if spec.degree == 1:
        return Mat(QQ, [[x[0] for x in row] for row in g.rows])
    return regular_representation(g, spec)


def lie_span(gens, spec):
    """Bracket closure of the logarithms of unipotent generators."""
    for g in gens:
        if not is_unipotent(g):
            raise GroupRankError("generator is not unipotent")
    if not gens:
        return LieSpan(0, [])
    rational = [to_rational_matrix(g, spec) for g in gens]
    logs = [nilpotent_log(m) for m in rational]
    basis = _lie_closure(logs)
    return LieSpan(rational[0].n, basis)


def unipotent_rank(gens, spec):
    """Torsion-free (= Prufer) rank of the group generated by unipotent
    matrices: the dimension of the Lie algebra generated by their logs."""
    return lie_span(gens, spec).dim


def is_arithmetic_unipotent(l_gens, algebra_dim, spec):
    """Arithmeticity of a finitely generated subgroup of a unipotent
    algebraic group of the given dimension: rank equality decides it."""
    return unipotent_rank(l_gens, spec) == int(algebra_dim)


def unipotent_radical_rank(gens, crp, pres_cr, spec):
    """Rank of the unipotent radical with a finitely generated witness.

    Starts from the radical's normal generators and replaces the set by its
    one-step conjugates until the log Lie span stabilizes; returns the stable
    rank and the witness generator list (in the conjugated frame).
    """
    from .structure import unipotent_radical_normal_generators

    x_list = unipotent_radical_normal_generators(gens, crp, pres_cr)
    if not x_list:
        return 0, []
    s_y = crp.conjugated_generators(gens)
    s_inv = [g.inverse() for g in s_y]
    bound = _rank_bound_ambient(spec, gens[0].n)
    rank = unipotent_rank(x_list, spec)
    for _ in range(bound + 1):
        candidates = []
        for x in x_list:
            candidates.append(x)
            for g, ginv in zip(s_y, s_inv):
                candidates.append(ginv * x * g)
                candidates.append(g * x * ginv)
        new_list = _prune_by_lie_span(candidates, spec)
        new_rank = unipotent_rank(new_list, spec)
        if new_rank < rank:
            raise GroupRankError("internal: radical rank decreased")
        if new_rank == rank:
            return rank, x_list
        x_list, rank = new_list, new_rank
    raise GroupRankError("internal: radical saturation failed to stabilize")


def _prune_by_lie_span(candidates, spec):
    """Keep only candidates whose logs enlarge the bracket closure; dropping
    the rest changes neither the rank sequence nor its limit, because the
    closure is conjugation-equivariant."""
    kept = []
    kept_logs = []
    basis = []
    ident = None
    for x in candidates:
        if ident is None:
            ident = Mat.identity(x.ring, x.n)
        if x == ident:
            continue
        lg = nilpotent_log(to_rational_matrix(x, spec))
        trial = _lie_closure(kept_logs + [lg])
        if len(trial) > len(basis):
            kept.append(x)
            kept_logs.append(lg)
            basis = trial
    return kept


def _rank_bound_ambient(spec, n):
    d = n * spec.degree
    return d * (d - 1) // 2
