"""Exact rank computations for finitely generated matrix groups.

Given generators over Q or an algebraic number field the package decides
finite Prufer rank, computes the Hirsch number (torsion-free rank), bounds
the Prufer rank, and decides finite index of a finitely generated subgroup.
All arithmetic is exact; numerics appear only inside certified interval
computations that steer searches whose results are re-verified exactly.
"""

from .errors import (
    GroupRankError,
    ImageBudgetExceeded,
    InfiniteRankError,
    SchemaError,
    UncertifiedError,
    UnknownVerdict,
)
from .numberfield import FiniteField, NumberFieldSpec, QQ
from .matrix import (
    Mat,
    Subspace,
    charpoly,
    common_kernel,
    jordan_decomposition,
    minpoly,
    nilpotent_exp,
    nilpotent_log,
    regular_representation,
    subspace_image,
    subspace_intersect,
)
from .congruence import (
    DEFAULT_BUDGET,
    CongruenceSite,
    FiniteImage,
    Presentation,
    enumerate_image,
    evaluate_word,
    kernel_normal_generators,
    reduce_matrix,
    schreier_presentation,
    select_prime,
    valid_primes,
)
from .structure import (
    BlockForm,
    CRPart,
    InvariantAlgebra,
    SFVerdict,
    completely_reducible_part,
    invariant_algebra,
    is_finite_rank,
    is_nilpotent_algebra,
    is_solvable_by_finite,
    is_ua_normal_closure,
    stable_fixed_space,
    unipotent_radical_normal_generators,
)
from .unipotent import (
    LieSpan,
    is_arithmetic_unipotent,
    lie_span,
    unipotent_radical_rank,
    unipotent_rank,
)
from .abelian import (
    AbelianPresentation,
    CRGroupData,
    EigenData,
    RelationLattice,
    abelian_presentation,
    abelian_rank,
    completely_reducible_presentation,
    completely_reducible_rank,
    eigen_data,
    relation_lattice,
)
from .toolkit import (
    GroupAnalysis,
    RankReport,
    analyze,
    hirsch_number,
    is_of_finite_index,
    rank_bound,
    rk_bound_gl,
)
from .groupfile import dump_group, group_to_obj, load_group, parse_group

__version__ = "0.1.0"
