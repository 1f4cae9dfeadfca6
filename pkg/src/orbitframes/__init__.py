"""Operator orbits, frames and the Carleson condition, in finite truncations."""

__version__ = "0.1.0"

from .disc import (
    CarlesonReport,
    DiscSequence,
    DropPrefix,
    RootMap,
    Subsequence,
    Verdict,
    carleson_products,
    generate_algebraic,
    generate_geometric,
    pseudo_hyperbolic_distance,
    root_lemma_factor,
    tail_sum,
    transform_sequence,
)
from .errors import (
    ConfigError,
    DimensionError,
    DomainError,
    OverflowRisk,
    RankError,
    SingularGram,
    TailError,
    UnknownExample,
)
from .frames import (
    DiagonalSystem,
    FrameBounds,
    OrbitMatrix,
    apply_diag,
    build_h,
    build_h_root,
    carleson_frame_experiment,
    frame_bounds,
    limit_frame_bounds,
    orbit_matrix,
    root_orbit_decomposition,
)
from .hardy import (
    HardyPoly,
    KernelGram,
    eval_poly,
    hardy_inner,
    interpolate,
    kernel_gram,
    phi_lambda,
)
from .operator_repr import (
    DualFamily,
    VectorFamily,
    example_factory,
    expansion_residuals,
    kernel_shift_check,
    norm_ratio_sequence,
    restricted_norm_estimate,
    right_shift,
    scaled_riesz_bound_check,
    synthesis_apply,
)
