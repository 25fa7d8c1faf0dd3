"""Weighted least-squares smoothing of cocycles on the epsilon-graph.

Solves min_f sum_e q_e (alpha_e + (d0 f)_e)^2 — the Dirichlet problem for the
weighted graph Laplacian — under uniform, kernel-density, or degree-based
weight schemes, and exposes pointwise application of the density-normalized
graph Laplacian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import ConvergenceError
from .geometry import PointCloud
from .persistence import Cochain1
from .rips import RipsComplex, coboundary0

DEFAULT_TOL = 1e-10


@dataclass
class WeightScheme:
    """Per-edge positive quadratic weights q_e for the solve.

    Attributes:
        kind: "uniform", "wdgl", "inv_deg_sum", or "inv_sqrt_deg_prod".
        q: (E,) positive weights, one per edge of the target complex.
        t: kernel bandwidth, set for the "wdgl" kind only.
    """

    kind: str
    q: np.ndarray
    t: float | None = None


@dataclass
class DensityEstimate:
    """Kernel density estimate at the vertices.

    Attributes:
        phat: (n,) estimated density, strictly positive.
        t: bandwidth used by the kernel.
        g: (E,) kernel values on the edges of the complex.
    """

    phat: np.ndarray
    t: float
    g: np.ndarray


def uniform_weights(complex: RipsComplex) -> WeightScheme:
    """All edges weighted equally (the classical harmonic scheme)."""
    return WeightScheme(kind="uniform", q=np.ones(complex.n_edges))


def default_bandwidth(complex: RipsComplex) -> float:
    """0.2 times the mean edge length of the epsilon-graph.

    Note the units: the result multiplies as a squared length inside the
    kernel exp(-len^2 / (4t)).  The heuristic is used verbatim anyway; pass an
    explicit bandwidth to override it.

    Raises:
        ValueError: the complex has no edges.
    """
    if complex.n_edges == 0:
        raise ValueError("bandwidth heuristic needs at least one edge")
    return 0.2 * float(complex.edge_lengths.mean())


def _kernel_density(cloud: PointCloud, complex: RipsComplex, t: float):
    if t <= 0:
        raise ValueError("bandwidth t must be positive")
    n = complex.n_vertices
    g = np.exp(-(complex.edge_lengths**2) / (4.0 * t))
    sums = np.ones(n)  # self-term g_ii = exp(0)
    sums += np.bincount(complex.edges[:, 0], weights=g, minlength=n)
    sums += np.bincount(complex.edges[:, 1], weights=g, minlength=n)
    return g, sums / n


def wdgl_weights(
    cloud: PointCloud, complex: RipsComplex, t: float | None = None
) -> tuple[WeightScheme, DensityEstimate]:
    """Kernel weights normalized by the estimated density at both endpoints.

    Each edge gets q_e = g_e / (phat_i * phat_j) with g_e = exp(-len^2/(4t))
    and phat the kernel density estimate over epsilon-neighbors plus the self
    term.  With this scheme d0' diag(q) d0 equals the density-normalized
    (weighted directed) graph Laplacian of the epsilon-graph.  The kernel
    normalization constant is dropped: it rescales every q_e equally and the
    minimizer is scale invariant.

    Args:
        cloud: the points the complex was built on.
        complex: target complex.
        t: kernel bandwidth; defaults to ``default_bandwidth(complex)``.

    Returns:
        (weights, density estimate).
    """
    if t is None:
        t = default_bandwidth(complex)
    g, phat = _kernel_density(cloud, complex, t)
    q = g / (phat[complex.edges[:, 0]] * phat[complex.edges[:, 1]])
    return (
        WeightScheme(kind="wdgl", q=q, t=float(t)),
        DensityEstimate(phat=phat, t=float(t), g=g),
    )


def degree_weights(complex: RipsComplex, kind: str = "inv_deg_sum") -> WeightScheme:
    """Degree-based edge weights; the quadratic weight is w(e)^2.

    kind "inv_deg_sum" gives w = 1/(D_i + D_j), "inv_sqrt_deg_prod" gives
    w = 1/sqrt(D_i * D_j), with D = vertex degree in the epsilon-graph.
    """
    if kind not in ("inv_deg_sum", "inv_sqrt_deg_prod"):
        raise ValueError(f"unknown degree weight kind {kind!r}")
    deg = complex.vertex_degrees().astype(np.float64)
    di = deg[complex.edges[:, 0]]
    dj = deg[complex.edges[:, 1]]
    w = 1.0 / (di + dj) if kind == "inv_deg_sum" else 1.0 / np.sqrt(di * dj)
    return WeightScheme(kind=kind, q=w * w)


def _pcg(lap: sparse.csr_matrix, b: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Jacobi-preconditioned conjugate gradient on the (consistent) system."""
    diag = lap.diagonal()
    diag = np.where(diag > 0, diag, 1.0)
    x = np.zeros_like(b)
    r = b.copy()
    target = tol * max(1.0, float(np.linalg.norm(b)))
    if np.linalg.norm(r) <= target:
        return x
    z = r / diag
    p = z.copy()
    rz = float(r @ z)
    for _ in range(max_iter):
        ap = lap @ p
        pap = float(p @ ap)
        if pap <= 0.0:
            break
        step = rz / pap
        x += step * p
        r -= step * ap
        if np.linalg.norm(r) <= target:
            return x
        z = r / diag
        rz_next = float(r @ z)
        p = z + (rz_next / rz) * p
        rz = rz_next
    raise ConvergenceError(
        f"conjugate gradient did not reach tol={tol:g} within {max_iter} iterations"
    )


def gauge_fix(f: np.ndarray, complex: RipsComplex) -> np.ndarray:
    """Shift f so the lowest-index vertex of each component sits at 0."""
    labels, reps = complex.components()
    return f - f[reps[labels]]


def harmonic_solve(
    complex: RipsComplex,
    alpha: Cochain1 | np.ndarray,
    weights: WeightScheme | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
) -> tuple[np.ndarray, Cochain1]:
    """Solve min_f sum_e q_e (alpha_e + (d0 f)_e)^2 on the complex.

    The normal equations (d0' Q d0) f = -d0' Q alpha are consistent and
    positive semidefinite; they are solved by diagonally preconditioned
    conjugate gradient, then f is gauge fixed to 0 at the lowest-index vertex
    of each connected component.

    Args:
        complex: target complex.
        alpha: integer cocycle on the complex's edges (Cochain1 or array).
        weights: weight scheme; defaults to uniform.
        tol: relative tolerance on the normal-equation residual.
        max_iter: iteration budget, default 10 * n_vertices.

    Returns:
        (f, alpha_h) with alpha_h = alpha + d0 f as a real Cochain1.

    Raises:
        ConvergenceError: iteration budget exhausted before tol.
    """
    a = alpha.values if isinstance(alpha, Cochain1) else np.asarray(alpha)
    a = a.astype(np.float64)
    if len(a) != complex.n_edges:
        raise ValueError("alpha must have one value per edge")
    if weights is None:
        weights = uniform_weights(complex)
    q = weights.q
    if max_iter is None:
        max_iter = 10 * complex.n_vertices
    if complex.n_edges == 0:
        f = np.zeros(complex.n_vertices)
    else:
        d0 = coboundary0(complex).astype(np.float64)
        lap = (d0.T @ sparse.diags(q) @ d0).tocsr()
        b = -(d0.T @ (q * a))
        f = gauge_fix(_pcg(lap, b, tol, max_iter), complex)
        alpha_h_vals = a + d0 @ f
        return f, Cochain1(edges=complex.edges, values=alpha_h_vals, domain="real")
    return f, Cochain1(edges=complex.edges, values=a.copy(), domain="real")


def laplacian_apply(
    cloud: PointCloud, complex: RipsComplex, t: float, f: np.ndarray
) -> np.ndarray:
    """Apply the density-normalized graph Laplacian pointwise.

    (L f)_i = sum_j w_ij (f_i - f_j) over epsilon-neighbors j, with the
    directed weights w_ij = g_ij / phat_j.  Scaled by 1/(n*t) this
    approximates the manifold Laplacian in the geometer's sign convention
    (positive on sin along the unit circle).
    """
    f = np.asarray(f, dtype=np.float64)
    n = complex.n_vertices
    g, phat = _kernel_density(cloud, complex, t)
    i, j = complex.edges[:, 0], complex.edges[:, 1]
    diff = f[i] - f[j]
    out = np.bincount(i, weights=g / phat[j] * diff, minlength=n)
    out -= np.bincount(j, weights=g / phat[i] * diff, minlength=n)
    return out
