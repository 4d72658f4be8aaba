"""Regularised partitions, Plancherel sampling and shaken limit shapes."""

from .partitions import (
    Partition,
    conjugate,
    format_partition,
    is_e_regular,
    ladder_counts,
    ladder_number,
    num_standard_tableaux,
    parse_partition,
    partition_from_ladder_counts,
    regularise,
)
from .plancherel import derive_seed, pmf_exact, rsk_shape, sample
from .profile import Profile, corners, profile_of, rescaled_eval, sup_distance, support
from .shapes import (
    Omega,
    Scaled,
    ShakenShape,
    ShapeFunction,
    Sigma,
    alpha_of_e,
    omega_e,
    scaled,
)
from .shaking import (
    Flattening,
    PiecewiseLinear,
    SliceQuery,
    discrete_shake,
    flatten_inner,
    flatten_outer,
    shake_equivalence_check,
    slice_length,
)

__version__ = "0.1.0"

__all__ = [
    "Flattening",
    "Omega",
    "Partition",
    "PiecewiseLinear",
    "Profile",
    "Scaled",
    "ShakenShape",
    "ShapeFunction",
    "Sigma",
    "SliceQuery",
    "alpha_of_e",
    "conjugate",
    "corners",
    "derive_seed",
    "discrete_shake",
    "flatten_inner",
    "flatten_outer",
    "format_partition",
    "is_e_regular",
    "ladder_counts",
    "ladder_number",
    "num_standard_tableaux",
    "omega_e",
    "parse_partition",
    "partition_from_ladder_counts",
    "pmf_exact",
    "profile_of",
    "regularise",
    "rescaled_eval",
    "rsk_shape",
    "sample",
    "scaled",
    "shake_equivalence_check",
    "slice_length",
    "sup_distance",
    "support",
]
