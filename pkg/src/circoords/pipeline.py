"""End-to-end circular coordinates: diagram, cocycle lift, solve, wrap.

One entry point turns a point cloud and a choice of persistence pair into a
CircularMap under any of the supported solvers, reusing precomputed
distances or diagrams when the caller sweeps methods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circular import CircularMap, wrap
from .geometry import PointCloud, pairwise_distances
from .laplacian import (
    DensityEstimate,
    WeightScheme,
    degree_weights,
    harmonic_solve,
    uniform_weights,
    wdgl_weights,
)
from .lp import LossTrace, LpConfig, lp_coordinate, linf_coordinate_direct, \
    linf_coordinate_schedule, linf_coordinate_softmax
from .persistence import (
    DEFAULT_PRIME,
    Cochain1,
    PersistencePair,
    persistence_diagram,
    restrict_and_lift,
    select_epsilon,
)
from .rips import RipsComplex, build_rips

METHODS = (
    "l2",
    "wdgl",
    "inv_deg_sum",
    "inv_sqrt_deg_prod",
    "lp",
    "linf_direct",
    "linf_schedule",
    "linf_softmax",
)

_SOURCE_TAGS = {
    "l2": "L2",
    "wdgl": "WDGL",
    "inv_deg_sum": "InvDegSum",
    "inv_sqrt_deg_prod": "InvSqrtDegProd",
    "linf_direct": "Linf(direct)",
    "linf_schedule": "Linf(schedule)",
    "linf_softmax": "Linf(softmax)",
}


@dataclass
class CoordinateResult:
    """Everything produced along the way to a circular coordinate."""

    map: CircularMap
    f: np.ndarray
    alpha: Cochain1
    alpha_bar: Cochain1
    pair: PersistencePair
    epsilon: float
    complex: RipsComplex
    method: str
    weights: WeightScheme | None = None
    density: DensityEstimate | None = None
    trace: LossTrace | None = None


def compute_circular_coordinates(
    cloud: PointCloud,
    method: str = "l2",
    pair_id: int = 0,
    diagram: list[PersistencePair] | None = None,
    distances: np.ndarray | None = None,
    threshold: float | None = None,
    prime: int = DEFAULT_PRIME,
    epsilon: float | None = None,
    t: float | None = None,
    lp_cfg: LpConfig | None = None,
) -> CoordinateResult:
    """Compute a circular coordinate for one persistence class.

    Args:
        cloud: input points.
        method: one of METHODS.
        pair_id: which diagram pair to use (0 is the most persistent).
        diagram: reuse a precomputed diagram (skips recomputation).
        distances: reuse a precomputed distance matrix.
        threshold: filtration cutoff for the diagram; default encloses it.
        prime: coefficient field for persistence.
        epsilon: complex scale; default (birth + death) / 2 of the pair.
        t: bandwidth for the wdgl method.
        lp_cfg: hyperparameters for the lp/linf methods.

    Returns:
        CoordinateResult; .map.theta is the coordinate.

    Raises:
        ValueError: unknown method, or pair_id not in the diagram.
        LiftError: the chosen class dies before epsilon.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method tag {method!r}")
    if distances is None:
        distances = pairwise_distances(cloud)
    if diagram is None:
        diagram = persistence_diagram(
            cloud, threshold=threshold, prime=prime, distances=distances
        )
    matches = [p for p in diagram if p.pair_id == pair_id]
    if not matches:
        raise ValueError(f"no pair with pair_id={pair_id} in a diagram of {len(diagram)}")
    pair = matches[0]
    if epsilon is None:
        epsilon = select_epsilon(pair)
    complex = build_rips(cloud, epsilon, distances=distances)
    alpha = restrict_and_lift(pair, complex)

    weights: WeightScheme | None = None
    density: DensityEstimate | None = None
    trace: LossTrace | None = None
    source = _SOURCE_TAGS.get(method, "")
    if method in ("l2", "wdgl", "inv_deg_sum", "inv_sqrt_deg_prod"):
        if method == "l2":
            weights = uniform_weights(complex)
        elif method == "wdgl":
            weights, density = wdgl_weights(cloud, complex, t=t)
        else:
            weights = degree_weights(complex, kind=method)
        f, alpha_bar = harmonic_solve(complex, alpha, weights=weights)
    else:
        cfg = lp_cfg or LpConfig()
        if method == "lp":
            if math.isinf(cfg.p):
                raise ValueError("method 'lp' needs finite cfg.p")
            f, alpha_bar, trace = lp_coordinate(complex, alpha, cfg)
            source = f"Lp({cfg.p:g})"
        elif method == "linf_direct":
            f, alpha_bar, trace = linf_coordinate_direct(complex, alpha, cfg)
        elif method == "linf_schedule":
            if cfg.schedule is None:
                cfg = LpConfig(
                    p=cfg.p,
                    eta=cfg.eta,
                    tau=cfg.tau,
                    max_epochs=cfg.max_epochs,
                    schedule=(2, 50),
                    temperature_start=cfg.temperature_start,
                    init=cfg.init,
                )
            f, alpha_bar, trace = linf_coordinate_schedule(complex, alpha, cfg)
        else:
            f, alpha_bar, trace = linf_coordinate_softmax(complex, alpha, cfg)

    cmap = wrap(f, complex, source=source)
    return CoordinateResult(
        map=cmap,
        f=f,
        alpha=alpha,
        alpha_bar=alpha_bar,
        pair=pair,
        epsilon=float(epsilon),
        complex=complex,
        method=method,
        weights=weights,
        density=density,
        trace=trace,
    )
