"""Circular coordinates for point clouds via persistent cohomology.

Builds Rips complexes, computes persistence diagrams over a prime field with
representative cocycles, and turns a chosen cohomology class into a circle
valued coordinate by harmonic (weighted least squares) or L^p / L^infinity
minimization.  See the CLI (`circoords --help`) for the file-based workflow.
"""

from .circular import (
    CircularMap,
    EvalReport,
    anchor_loop,
    evaluate,
    linearity_score,
    winding_number,
    wrap,
)
from .errors import (
    CircoordsError,
    ConvergenceError,
    FormatError,
    LiftError,
    LoopError,
)
from .geometry import (
    PointCloud,
    enclosing_radius,
    gen_conjoined_circles,
    gen_noisy_circle,
    gen_torus,
    gen_trefoil,
    pairwise_distances,
)
from .laplacian import (
    DensityEstimate,
    WeightScheme,
    default_bandwidth,
    degree_weights,
    gauge_fix,
    harmonic_solve,
    laplacian_apply,
    uniform_weights,
    wdgl_weights,
)
from .lp import (
    LossTrace,
    LpConfig,
    linf_coordinate_direct,
    linf_coordinate_schedule,
    linf_coordinate_softmax,
    lp_coordinate,
    lp_norm,
    softmax_objective,
)
from .persistence import (
    DEFAULT_PRIME,
    Cochain1,
    PersistencePair,
    centered_residue,
    is_prime,
    persistence_diagram,
    restrict_and_lift,
    select_epsilon,
)
from .pipeline import METHODS, CoordinateResult, compute_circular_coordinates
from .rips import RipsComplex, build_rips, coboundary0, coboundary1

__version__ = "0.1.0"

__all__ = [
    "CircoordsError",
    "CircularMap",
    "Cochain1",
    "ConvergenceError",
    "CoordinateResult",
    "DEFAULT_PRIME",
    "DensityEstimate",
    "EvalReport",
    "FormatError",
    "LiftError",
    "LoopError",
    "LossTrace",
    "LpConfig",
    "METHODS",
    "PersistencePair",
    "PointCloud",
    "RipsComplex",
    "WeightScheme",
    "anchor_loop",
    "build_rips",
    "centered_residue",
    "coboundary0",
    "coboundary1",
    "compute_circular_coordinates",
    "default_bandwidth",
    "degree_weights",
    "enclosing_radius",
    "evaluate",
    "gauge_fix",
    "gen_conjoined_circles",
    "gen_noisy_circle",
    "gen_torus",
    "gen_trefoil",
    "harmonic_solve",
    "is_prime",
    "laplacian_apply",
    "linearity_score",
    "linf_coordinate_direct",
    "linf_coordinate_schedule",
    "linf_coordinate_softmax",
    "lp_coordinate",
    "lp_norm",
    "pairwise_distances",
    "persistence_diagram",
    "restrict_and_lift",
    "select_epsilon",
    "softmax_objective",
    "uniform_weights",
    "wdgl_weights",
    "winding_number",
    "wrap",
]
