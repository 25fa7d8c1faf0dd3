"""Figure rendering: PCA projection and cyclic-hue scatter plots to SVG.

PCA is computed in-module by power iteration with deflation so plotting has
no dependency beyond matplotlib itself.  SVG output is pinned (fixed hash
salt, no date metadata) to keep renders byte-stable for identical inputs.
"""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg", force=True)

import matplotlib.pyplot as plt

PCA_TOL = 1e-10
PCA_MAX_ITER = 10_000
_HASH_SALT = "circoords"


def _power_iterate(c: np.ndarray) -> np.ndarray:
    """Dominant eigenvector of a symmetric PSD matrix, deterministic start."""
    start = int(np.argmax(np.diag(c)))
    v = np.zeros(c.shape[0])
    v[start] = 1.0
    for _ in range(PCA_MAX_ITER):
        w = c @ v
        norm = np.linalg.norm(w)
        if norm <= PCA_TOL:  # zero matrix: any direction is an eigenvector
            return v
        w /= norm
        if np.linalg.norm(w - v) < PCA_TOL:
            v = w
            break
        v = w
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0:  # pin the sign so reruns agree
        v = -v
    return v


def pca_project(points: np.ndarray, n_components: int = 2) -> np.ndarray:
    """Project centered points onto their top principal components.

    Inputs with fewer ambient dimensions than requested are padded with zero
    columns (a 1D strip stays a strip).
    """
    x = np.asarray(points, dtype=np.float64)
    x = x - x.mean(axis=0)
    d = x.shape[1]
    if d <= n_components:
        return np.hstack([x, np.zeros((x.shape[0], n_components - d))])
    c = (x.T @ x) / max(x.shape[0], 1)
    comps = []
    for _ in range(n_components):
        v = _power_iterate(c)
        comps.append(v)
        lam = float(v @ c @ v)
        c = c - lam * np.outer(v, v)
    return x @ np.column_stack(comps)


def scatter_figure(xy: np.ndarray, theta: np.ndarray, title: str = ""):
    """2D scatter colored by theta on the cyclic HSV wheel."""
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    sc = ax.scatter(xy[:, 0], xy[:, 1], c=theta, cmap="hsv", vmin=0.0, vmax=1.0, s=14)
    ax.set_aspect("equal")
    ax.set_xlabel("component 1")
    ax.set_ylabel("component 2")
    if title:
        ax.set_title(title)
    fig.colorbar(sc, ax=ax, label="theta", fraction=0.046)
    return fig


def correlation_figure(scatter: np.ndarray, method: str = ""):
    """Truth (turns) against theta; linear stripes mean good coordinates."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.scatter(scatter[:, 0], scatter[:, 1], s=10, color="#1f77b4")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_aspect("equal")
    ax.set_xlabel("truth / 2pi")
    ax.set_ylabel("theta")
    if method:
        ax.set_title(method)
    return fig


def save_svg(fig, path) -> None:
    """Write the figure as SVG with reproducible ids and no timestamp."""
    with matplotlib.rc_context({"svg.hashsalt": _HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
