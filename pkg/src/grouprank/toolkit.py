"""Top-level rank algorithms and the report pipeline.

The Hirsch number of a solvable-by-finite group splits along the unipotent
radical: the completely reducible part contributes the rank of its abelian
congruence kernel, the radical contributes its log Lie-span dimension.  The
Prufer rank is then bounded by adding a generation bound for the general
linear group over the three-element field.
"""

import time

from .errors import GroupRankError, InfiniteRankError, UnknownVerdict, UncertifiedError
from .congruence import DEFAULT_BUDGET, select_prime
from .structure import completely_reducible_part, is_solvable_by_finite
from .abelian import (
    CRGroupData,
    PRECISION_LADDER,
    completely_reducible_presentation,
    completely_reducible_rank,
    eigen_data,
    relation_lattice,
)
from .unipotent import unipotent_radical_rank


def rk_bound_gl(d):
    """Upper bound for the Prufer rank of GL(d, 3): the better of the
    quarter-square bound (d >= 4) and generation-by-3d/2 plus the
    unitriangular rank."""
    d = int(d)
    if d <= 0:
        raise GroupRankError("dimension must be positive")
    second = (3 * d) // 2 + d * (d - 1) // 2
    if d >= 4:
        return min(d * d // 4 + 1, second)
    return second


class GroupAnalysis:
    """Caching pipeline: one congruence analysis feeds every rank question."""

    def __init__(self, gens, spec, prime=None, budget=DEFAULT_BUDGET,
                 precision_ladder=PRECISION_LADDER):
        if not gens:
            raise GroupRankError("no generators")
        self.gens = list(gens)
        self.spec = spec
        self.prime = prime
        self.budget = budget
        self.precision_ladder = tuple(precision_ladder)
        self.timings = {}
        self._cache = {}

    def _timed(self, stage, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            self.timings[stage] = self.timings.get(stage, 0.0) + time.perf_counter() - t0

    def _get(self, name, builder):
        if name not in self._cache:
            self._cache[name] = builder()
        return self._cache[name]

    @property
    def verdict(self):
        return self._get("verdict", lambda: self._timed(
            "finite_rank_test",
            lambda: is_solvable_by_finite(self.gens, self.spec, self.prime, self.budget)))

    def finite_rank(self):
        """True / False, or raises UnknownVerdict on budget exhaustion."""
        v = self.verdict
        if v.is_unknown:
            raise UnknownVerdict("budget", "congruence image exceeded %r" % (v.budget_info,))
        return v.is_true

    @property
    def crp(self):
        def build():
            if not self.finite_rank():
                raise InfiniteRankError("group has infinite rank")
            return self._timed("cr_part", lambda: completely_reducible_part(
                self.gens, self.spec, verdict=self.verdict))
        return self._get("crp", build)

    def _derived_prime(self, gens):
        # a forced prime is honored where it stays valid for derived groups
        if self.prime is None:
            return None
        try:
            select_prime(gens, self.spec, self.prime)
            return self.prime
        except GroupRankError:
            return None

    @property
    def cr_data(self):
        def build():
            crp = self.crp
            return self._timed("cr_kernel", lambda: CRGroupData(
                crp.gens, self.spec, self._derived_prime(crp.gens),
                self.budget, self.precision_ladder))
        return self._get("cr_data", build)

    @property
    def cr_rank(self):
        def build():
            crp, data = self.crp, self.cr_data
            return self._timed("cr_rank", lambda: completely_reducible_rank(
                crp.gens, self.spec, data=data,
                precision_ladder=self.precision_ladder))
        return self._get("cr_rank", build)

    @property
    def pres_cr(self):
        def build():
            crp, data = self.crp, self.cr_data
            return self._timed("cr_presentation", lambda: completely_reducible_presentation(
                crp.gens, self.spec, data=data,
                precision_ladder=self.precision_ladder))
        return self._get("pres_cr", build)

    @property
    def radical(self):
        def build():
            crp, pres = self.crp, self.pres_cr
            return self._timed("unipotent_radical", lambda: unipotent_radical_rank(
                self.gens, crp, pres, self.spec))
        return self._get("radical", build)

    @property
    def hirsch(self):
        """hi(G) = rank of the completely reducible part + rank of the radical."""
        def build():
            h = self.cr_rank + self.radical[0]
            return h
        return self._get("hirsch", build)

    @property
    def rank_bound(self):
        d = self.gens[0].n * self.spec.degree
        return self.hirsch + rk_bound_gl(d)

    @property
    def prime_used(self):
        v = self.verdict
        return v.site.p if v.site is not None else None

    def certificates(self, verify=False):
        """Certificate summaries; with verify=True every exact re-check runs."""
        v = self.verdict
        out = {
            "block_sizes": list(self.crp.blockform.block_sizes) if v.is_true else None,
            "kernel_generators": len(v.kernel_gens or []),
            "image_order": v.image.order if v.image is not None else None,
            "cr_kernel_generators": len(self.cr_data.kernel) if v.is_true else None,
            "radical_witness_size": len(self.radical[1]) if v.is_true else None,
        }
        if v.is_true:
            mats = self.cr_data.kernel_matrices()
            if mats:
                lat = relation_lattice(eigen_data(mats, self.spec), self.precision_ladder)
                out["abelian_lattice"] = {"generators": lat.k, "relation_rank": lat.rank,
                                          "certified": lat.certified}
            else:
                out["abelian_lattice"] = {"generators": 0, "relation_rank": 0,
                                          "certified": True}
        if verify:
            checked = 0
            failures = 0

            def check(ok):
                nonlocal checked, failures
                checked += 1
                if not ok:
                    failures += 1

            if v.witness is not None:
                check(v.witness.verify(self.gens))
            if v.image is not None:
                check(v.image.verify_closure())
            if v.presentation is not None:
                check(all(not w or _evaluates_identity(w, v.image)
                          for w in v.presentation.relators))
            if v.site is not None and v.kernel_gens:
                from .congruence import reduce_matrix
                check(all(reduce_matrix(y, v.site).is_identity() for y in v.kernel_gens))
            if v.is_true:
                check(self.crp.blockform.verify(self.gens))
                check(self.pres_cr.verify(self.crp.gens))
                mats = self.cr_data.kernel_matrices()
                if mats:
                    lat = relation_lattice(eigen_data(mats, self.spec),
                                           self.precision_ladder)
                    check(lat.certified and lat.verify())
            out["verified"] = {"checked": checked, "failures": failures}
        return out


def _evaluates_identity(word, img):
    from .congruence import evaluate_word
    return evaluate_word(word, img.gens_ff).is_identity()


def hirsch_number(gens, spec, prime=None, budget=DEFAULT_BUDGET,
                  precision_ladder=PRECISION_LADDER):
    """Torsion-free rank of a finite-rank group; raises InfiniteRankError on
    infinite-rank input and UnknownVerdict on budget or certification gaps."""
    return GroupAnalysis(gens, spec, prime, budget, precision_ladder).hirsch


def rank_bound(gens, spec, prime=None, budget=DEFAULT_BUDGET,
               precision_ladder=PRECISION_LADDER):
    """An upper bound on the Prufer rank: hirsch + rk_bound_gl(n*m)."""
    return GroupAnalysis(gens, spec, prime, budget, precision_ladder).rank_bound


def is_of_finite_index(gens_g, gens_h, spec, prime=None, budget=DEFAULT_BUDGET,
                       precision_ladder=PRECISION_LADDER):
    """Finite-index test for H <= G (the inclusion is the caller's
    responsibility): true exactly when the Hirsch numbers agree."""
    if gens_g and gens_h and gens_g[0].n != gens_h[0].n:
        raise GroupRankError("groups live in different dimensions")
    hg = hirsch_number(gens_g, spec, prime, budget, precision_ladder)
    hh = hirsch_number(gens_h, spec, prime, budget, precision_ladder)
    return hh == hg


class RankReport:
    """Machine-readable outcome of a full analysis."""

    def __init__(self, hirsch, prufer_upper_bound, prime_used, certificates,
                 timings, finite_rank=True, status="ok", detail=None):
        self.hirsch = hirsch
        self.prufer_upper_bound = prufer_upper_bound
        self.prime_used = prime_used
        self.certificates = certificates
        self.timings = timings
        self.finite_rank = finite_rank
        self.status = status
        self.detail = detail
        if (self.hirsch is not None and self.prufer_upper_bound is not None
                and self.hirsch > self.prufer_upper_bound):
            raise GroupRankError("internal: hirsch exceeds the rank bound")

    def to_dict(self):
        return {
            "status": self.status,
            "finite_rank": self.finite_rank,
            "hirsch": self.hirsch,
            "prufer_upper_bound": self.prufer_upper_bound,
            "prime_used": self.prime_used,
            "certificates": self.certificates,
            "timings": {k: round(v, 6) for k, v in (self.timings or {}).items()},
            "detail": self.detail,
        }


def analyze(gens, spec, prime=None, budget=DEFAULT_BUDGET,
            precision_ladder=PRECISION_LADDER, verify=False):
    """Run the full pipeline and collect a RankReport; unknown outcomes are
    reported, not raised."""
    ga = GroupAnalysis(gens, spec, prime, budget, precision_ladder)
    try:
        finite = ga.finite_rank()
    except UnknownVerdict as exc:
        return RankReport(None, None, None, {}, ga.timings, finite_rank=None,
                          status="unknown", detail=str(exc))
    if not finite:
        return RankReport(None, None, ga.prime_used, {}, ga.timings,
                          finite_rank=False, status="infinite_rank")
    try:
        h = ga.hirsch
        bound = ga.rank_bound
        certs = ga.certificates(verify=verify)
    except (UnknownVerdict, UncertifiedError) as exc:
        return RankReport(None, None, ga.prime_used, {}, ga.timings,
                          finite_rank=True, status="unknown", detail=str(exc))
    return RankReport(h, bound, ga.prime_used, certs, ga.timings)
