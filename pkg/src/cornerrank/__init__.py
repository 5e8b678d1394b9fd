"""Stable rank of rings, skew corners and witness-carrying transforms.

Rings are exact (Z/m, the integers, matrix rings, products, corners), stable
rank conditions are decided by exhaustive search on finite rings, and the
transforms turn verified solvers for one corner into verified solvers for
another.
"""

from .idempotents import (
    EquivalenceWitness,
    FullnessCertificate,
    Idempotent,
    direct_sum,
    enumerate_idempotents,
    equivalent,
    is_full,
    leq,
    n_times,
    orthogonal,
    subequivalent,
)
from .ideals import right_ideal_contains, solve_right_inverse
from .rings import (
    CornerRing,
    Elem,
    Integers,
    MatrixRing,
    ProductRing,
    Ring,
    RingError,
    UpperTriangularRing,
    ZMod,
    embed,
    make_ring,
)
from .snf import smith_normal_form
from .stablerank import (
    CornerEquation,
    CornerSolution,
    Reducer,
    Reduction,
    SkewCorner,
    Solver,
    WitnessError,
    is_reducible,
    is_right_unimodular,
    skew_sr1_check,
    stable_rank,
    verify_solution,
)
from .transforms import (
    Obs5Step,
    PipelineTrace,
    lemma1_backward,
    lemma1_forward,
    lemma2a_witness,
    lemma2b_transport,
    lemma3_extend,
    lemma4_restrict,
    morita_bounds,
    obs5_apply,
    prop6_combine,
    prop6_double,
    theorem7_pipeline,
    theorem8_construct,
    vaserstein_bound,
)
from .zsolvers import m2z_unimodular, z_reducer, z_sr_lower_witness

__version__ = "0.1.0"

__all__ = [
    "CornerEquation",
    "CornerRing",
    "CornerSolution",
    "Elem",
    "EquivalenceWitness",
    "FullnessCertificate",
    "Idempotent",
    "Integers",
    "MatrixRing",
    "Obs5Step",
    "PipelineTrace",
    "ProductRing",
    "Reducer",
    "Reduction",
    "Ring",
    "RingError",
    "SkewCorner",
    "Solver",
    "UpperTriangularRing",
    "WitnessError",
    "ZMod",
    "direct_sum",
    "embed",
    "enumerate_idempotents",
    "equivalent",
    "is_full",
    "is_reducible",
    "is_right_unimodular",
    "lemma1_backward",
    "lemma1_forward",
    "lemma2a_witness",
    "lemma2b_transport",
    "lemma3_extend",
    "lemma4_restrict",
    "leq",
    "m2z_unimodular",
    "make_ring",
    "morita_bounds",
    "n_times",
    "obs5_apply",
    "orthogonal",
    "prop6_combine",
    "prop6_double",
    "right_ideal_contains",
    "skew_sr1_check",
    "smith_normal_form",
    "solve_right_inverse",
    "stable_rank",
    "subequivalent",
    "theorem7_pipeline",
    "theorem8_construct",
    "vaserstein_bound",
    "verify_solution",
    "z_reducer",
    "z_sr_lower_witness",
]
