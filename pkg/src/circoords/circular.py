"""Circle-valued coordinates from vertex potentials, and their scoring.

Wraps solved potentials onto R/Z, counts windings around closed edge loops,
builds such loops from ground-truth angles, and scores how linearly a
coordinate tracks the truth on the circle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import LoopError
from .geometry import TWO_PI
from .laplacian import gauge_fix
from .rips import RipsComplex


@dataclass
class CircularMap:
    """Per-vertex coordinate on the circle.

    Attributes:
        theta: values in [0, 1), fractions of a full turn.
        component_id: connected-component label per vertex.
        source: method tag ("L2", "WDGL", "Lp(4)", ...).
    """

    theta: np.ndarray
    component_id: np.ndarray
    source: str = ""

    def __post_init__(self) -> None:
        if self.theta.shape != self.component_id.shape:
            raise ValueError("theta and component_id must align")

    @property
    def n_points(self) -> int:
        return len(self.theta)


@dataclass
class EvalReport:
    """Agreement of a circular coordinate with ground truth.

    Attributes:
        scatter: (n, 2) array of (truth angle / 2pi, theta); the first
            column is NaN where the truth is undefined.
        winding: net integer turns of theta around the evaluation loop.
        linearity_score: alignment score in [0, 1], 1 meaning theta is a
            rotation or reflection of the truth.
        method: tag copied from the map.
    """

    scatter: np.ndarray
    winding: int
    linearity_score: float
    method: str


def wrap(f: np.ndarray, complex: RipsComplex | None = None, source: str = "") -> CircularMap:
    """Reduce a vertex potential mod 1 into a CircularMap.

    The gauge vertex (lowest index per component when a complex is given,
    vertex 0 otherwise) is shifted to theta = 0 first, so maps from
    differently gauged potentials coincide.
    """
    f = np.asarray(f, dtype=np.float64)
    if complex is not None:
        if len(f) != complex.n_vertices:
            raise ValueError("f must have one value per vertex")
        labels, _ = complex.components()
        f = gauge_fix(f, complex)
        comp = labels.copy()
    else:
        f = f - f[0] if len(f) else f
        comp = np.zeros(len(f), dtype=np.int64)
    theta = f - np.floor(f)
    theta[theta >= 1.0] = 0.0  # 1 - eps can round up to exactly 1.0
    return CircularMap(theta=theta, component_id=comp, source=source)


def winding_number(
    cmap: CircularMap, loop, complex: RipsComplex | None = None
) -> int:
    """Net turns of theta around a closed vertex path.

    Each step contributes the wrapped increment in (-1/2, 1/2]; the sum over
    a closed path is an integer.  The path is closed implicitly if its last
    vertex differs from its first.

    Raises:
        LoopError: a step of the path is not an edge of the complex
            (checked only when a complex is passed).
    """
    loop = np.asarray(loop, dtype=np.int64)
    if len(loop) == 0:
        return 0
    if loop[0] != loop[-1]:
        loop = np.append(loop, loop[0])
    if complex is not None:
        pairs = np.column_stack([loop[:-1], loop[1:]])
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        ids = complex.edge_ids(np.sort(pairs, axis=1))
        if np.any(ids < 0):
            u, v = pairs[int(np.argmin(ids))]
            raise LoopError(f"loop step ({u}, {v}) is not an edge")
    d = cmap.theta[loop[1:]] - cmap.theta[loop[:-1]]
    d -= np.floor(d)
    d[d > 0.5] -= 1.0
    return int(round(float(d.sum())))


def _alignment_score(theta: np.ndarray, truth_frac: np.ndarray) -> float:
    shifts = np.arange(360) / 360.0
    best = 0.0
    for sign in (1.0, -1.0):
        r = (theta - sign * truth_frac) % 1.0
        d = (r[None, :] - shifts[:, None]) % 1.0
        d = np.minimum(d, 1.0 - d)
        best = max(best, 1.0 - 2.0 * float(d.mean(axis=1).min()))
    return best


def linearity_score(cmap: CircularMap, truth_angles: np.ndarray) -> float:
    """Best circular correlation of theta against truth, in [0, 1].

    Maximizes 1 - 2 * mean circular distance over 360 rotations of the truth
    and both orientations.  1.0 means theta equals the truth up to rotation
    or reflection; independent uniform values score about 1/2.

    Args:
        cmap: the coordinate to score.
        truth_angles: ground-truth angles in radians, one per vertex.

    Raises:
        ValueError: length mismatch or NaN truth (mask upstream instead).
    """
    truth = np.asarray(truth_angles, dtype=np.float64).reshape(-1)
    if len(truth) != cmap.n_points:
        raise ValueError("truth must have one angle per vertex")
    if len(truth) == 0:
        raise ValueError("cannot score an empty map")
    if np.isnan(truth).any():
        raise ValueError("truth contains NaN; restrict to defined vertices first")
    return _alignment_score(cmap.theta, (truth / TWO_PI) % 1.0)


def anchor_loop(
    complex: RipsComplex,
    angles: np.ndarray,
    n_anchors: int = 12,
    eligible: np.ndarray | None = None,
) -> np.ndarray:
    """Closed edge path that follows a truth angle once around its cycle.

    Picks, for each of n_anchors evenly spaced target angles, the eligible
    vertex circularly closest to it, then joins consecutive anchors by
    shortest paths in the epsilon-graph (edge lengths as weights).  Intended
    as the loop argument of winding_number.

    Args:
        complex: graph to route through.
        angles: truth angles in radians; NaN entries are never anchors.
        n_anchors: targets around the circle; 12 is enough for convex-ish
            loops, raise it for contorted ones.
        eligible: optional vertex mask restricting anchor choice (pick one
            class of a multi-class dataset, or a band of a second angle).

    Returns:
        Vertex index array, first == last.

    Raises:
        LoopError: no eligible vertices, anchors collapse to fewer than 3
            distinct vertices, or anchors sit in different components.
    """
    angles = np.asarray(angles, dtype=np.float64).reshape(-1)
    if len(angles) != complex.n_vertices:
        raise ValueError("angles must have one value per vertex")
    mask = ~np.isnan(angles)
    if eligible is not None:
        mask &= np.asarray(eligible, dtype=bool)
    cand = np.flatnonzero(mask)
    if len(cand) == 0:
        raise LoopError("no eligible vertices to anchor the loop")
    a = angles[cand] % TWO_PI
    anchors: list[int] = []
    for target in np.arange(n_anchors) * (TWO_PI / n_anchors):
        d = np.abs(a - target)
        d = np.minimum(d, TWO_PI - d)
        anchors.append(int(cand[int(np.argmin(d))]))
    dedup = [anchors[0]]
    for v in anchors[1:]:
        if v != dedup[-1]:
            dedup.append(v)
    if len(dedup) > 1 and dedup[-1] == dedup[0]:
        dedup.pop()
    if len(dedup) < 3:
        raise LoopError("anchors collapse to fewer than 3 distinct vertices")

    n = complex.n_vertices
    w = np.maximum(complex.edge_lengths, 1e-12)  # zero weights vanish in csr
    graph = csr_matrix((w, (complex.edges[:, 0], complex.edges[:, 1])), shape=(n, n))
    _, pred = dijkstra(
        graph, directed=False, indices=np.asarray(dedup), return_predecessors=True
    )
    loop: list[int] = [dedup[0]]
    for row, src in enumerate(dedup):
        dst = dedup[(row + 1) % len(dedup)]
        back = [dst]
        cur = dst
        while cur != src:
            cur = int(pred[row, cur])
            if cur < 0:
                raise LoopError(f"anchors {src} and {dst} are not connected")
            back.append(cur)
        loop.extend(reversed(back[:-1]))
    return np.asarray(loop, dtype=np.int64)


def evaluate(
    cmap: CircularMap,
    truth_angles: np.ndarray,
    complex: RipsComplex | None = None,
    loop: np.ndarray | None = None,
    eligible: np.ndarray | None = None,
    n_anchors: int = 12,
) -> EvalReport:
    """Score a map against one truth angle and count its loop winding.

    The scatter covers every vertex (NaN truth rows included); the score and
    the anchor loop are restricted to vertices with defined truth, further
    intersected with `eligible` when given.  Pass `loop` to skip anchor-loop
    construction; otherwise a complex is required to build one.
    """
    truth = np.asarray(truth_angles, dtype=np.float64).reshape(-1)
    if len(truth) != cmap.n_points:
        raise ValueError("truth must have one angle per vertex")
    valid = ~np.isnan(truth)
    if eligible is not None:
        valid &= np.asarray(eligible, dtype=bool)
    if not valid.any():
        raise ValueError("no vertices with defined truth to evaluate")
    frac = np.full(len(truth), np.nan)
    frac[valid] = (truth[valid] / TWO_PI) % 1.0
    scatter = np.column_stack([frac, cmap.theta])
    score = _alignment_score(cmap.theta[valid], frac[valid])
    if loop is None:
        if complex is None:
            raise ValueError("winding needs a loop or a complex to build one")
        loop = anchor_loop(complex, np.where(valid, truth, np.nan), n_anchors)
    winding = winding_number(cmap, loop, complex)
    return EvalReport(
        scatter=scatter, winding=winding, linearity_score=score, method=cmap.source
    )
