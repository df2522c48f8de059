"""Covering-code construction, exact covering radii, and seeded experiments."""

from .covering import (
    BallSpec,
    CosetLeaderProfile,
    M_MAX,
    S_MAX,
    SpaceBitmap,
    ball_volume,
    binary_entropy,
    code_bitmap,
    coset_leader_profile,
    covered_fraction,
    covering_radius,
    entropy_inverse,
    expand_ball,
    format_fraction,
    radius_for_volume,
    sphere_covering_rate,
    xor_translate,
)
from .ensembles import (
    EnsembleParams,
    EnsembleSample,
    augment,
    concatenated_code,
    derive_row_count,
    puncture_wozencraft,
    quasicyclic,
    random_linear,
    sample,
    truncate_wozencraft,
    wozencraft,
)
from .errors import GuardError
from .gf2 import (
    FieldElement,
    FieldSpec,
    find_irreducible,
    gf_inv,
    gf_mul,
    is_irreducible,
    mul_matrix,
)
from .linalg import (
    BinaryMatrix,
    LinearCode,
    codewords,
    direct_sum,
    encode,
    min_distance,
    parity_check,
    rank,
    span_array,
)
from .rng import SplitMix64, splitmix64, trial_seed

__version__ = "0.1.0"

__all__ = [
    "BallSpec",
    "BinaryMatrix",
    "CosetLeaderProfile",
    "EnsembleParams",
    "EnsembleSample",
    "FieldElement",
    "FieldSpec",
    "GuardError",
    "LinearCode",
    "M_MAX",
    "S_MAX",
    "SpaceBitmap",
    "SplitMix64",
    "augment",
    "ball_volume",
    "binary_entropy",
    "code_bitmap",
    "codewords",
    "concatenated_code",
    "coset_leader_profile",
    "covered_fraction",
    "covering_radius",
    "derive_row_count",
    "direct_sum",
    "encode",
    "entropy_inverse",
    "expand_ball",
    "find_irreducible",
    "format_fraction",
    "gf_inv",
    "gf_mul",
    "is_irreducible",
    "min_distance",
    "mul_matrix",
    "parity_check",
    "puncture_wozencraft",
    "quasicyclic",
    "radius_for_volume",
    "random_linear",
    "rank",
    "sample",
    "span_array",
    "sphere_covering_rate",
    "splitmix64",
    "trial_seed",
    "truncate_wozencraft",
    "wozencraft",
    "xor_translate",
]
