"""Point clouds, pairwise distances, and seeded synthetic dataset generators.

All generators draw from ``numpy.random.Generator`` seeded with PCG64, so a
fixed seed reproduces bit-identical clouds on every platform.  Ground-truth
cycle angles are stored next to the points: column k of ``truth`` holds the
parameter angle of the k-th generator cycle, with NaN marking points that do
not lie on that cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

TWO_PI = 2.0 * np.pi


@dataclass
class PointCloud:
    """A finite set of points in Euclidean space.

    Attributes:
        points: (n, m) float64 array, one row per point.
        truth: optional (n, c) float64 array of ground-truth cycle angles in
            [0, 2*pi); NaN where a point does not belong to that cycle.
        label: short dataset tag.
        seed: seed the cloud was generated from, if any.
    """

    points: np.ndarray
    truth: np.ndarray | None = None
    label: str = ""
    seed: int | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim != 2:
            raise ValueError("points must be an (n, m) array")
        if self.points.shape[0] < 1 or self.points.shape[1] < 1:
            raise ValueError("need at least one point with dimension >= 1")
        if self.truth is not None:
            self.truth = np.asarray(self.truth, dtype=np.float64)
            if self.truth.ndim == 1:
                self.truth = self.truth[:, None]
            if self.truth.shape[0] != self.points.shape[0]:
                raise ValueError("truth must have one row per point")

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def pairwise_distances(cloud: PointCloud | np.ndarray) -> np.ndarray:
    """Euclidean distance matrix: symmetric, nonnegative, zero diagonal."""
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=np.float64)
    d = cdist(pts, pts)
    # cdist computes both triangles independently but identically; force the
    # diagonal to exact zero in case of rounding in the norm.
    np.fill_diagonal(d, 0.0)
    return d


def enclosing_radius(distances: np.ndarray) -> float:
    """Smallest r such that some point is within r of every other point.

    At this scale the Rips complex is a cone over that point, hence
    contractible, so every one-dimensional class dies at or before it.  Used
    as the default persistence threshold.
    """
    return float(np.min(np.max(distances, axis=1)))


def gen_noisy_circle(
    n: int = 300,
    mean: float = np.pi,
    std: float = 0.4 * np.pi,
    noise_std: float = 0.07,
    seed: int = 0,
) -> PointCloud:
    """Sample a unit circle with density concentrated around ``mean``.

    Points are (sin t, cos t) with t ~ N(mean, std^2) plus isotropic Gaussian
    noise of scale ``noise_std``.

    Args:
        n: number of points.
        mean: center of the angle distribution (radians).
        std: spread of the angle distribution (radians).
        noise_std: standard deviation of the additive coordinate noise.
        seed: PRNG seed.

    Returns:
        PointCloud with one truth column, t mod 2*pi.
    """
    rng = np.random.default_rng(seed)
    t = rng.normal(mean, std, size=n)
    pts = np.stack([np.sin(t), np.cos(t)], axis=1)
    pts += rng.normal(0.0, noise_std, size=pts.shape)
    return PointCloud(pts, truth=np.mod(t, TWO_PI)[:, None], label="circle", seed=seed)


def _trefoil_points(t: np.ndarray) -> np.ndarray:
    x = np.cos(t) + 2.0 * np.cos(2.0 * t)
    y = np.sin(t) - 2.0 * np.sin(2.0 * t)
    z = 2.0 * np.sin(3.0 * t)
    return np.stack([x, y, z], axis=1)


def gen_trefoil(
    n: int = 900,
    mean: float = np.pi,
    std: float = 0.4 * np.pi,
    noise_std: float = 0.04,
    seed: int = 0,
) -> PointCloud:
    """Sample a trefoil knot in R^3 with nonuniform density along the knot."""
    rng = np.random.default_rng(seed)
    t = rng.normal(mean, std, size=n)
    pts = _trefoil_points(t)
    pts += rng.normal(0.0, noise_std, size=pts.shape)
    return PointCloud(pts, truth=np.mod(t, TWO_PI)[:, None], label="trefoil", seed=seed)


def gen_conjoined_circles(
    n_per_circle: int = 300,
    mean: float = np.pi,
    std: float = 0.4 * np.pi,
    noise_std: float = 0.07,
    seed: int = 0,
    rotations: tuple[float, float] | None = None,
) -> PointCloud:
    """Two noisy unit circles, each randomly rotated, tangent at one point.

    Circle 0 is centered at the origin and circle 1 at (2, 0), so they touch
    at (1, 0).  Each circle is sampled like the noisy circle and then rotated
    about its own center by an angle drawn uniformly from [0, 2*pi) (or taken
    from ``rotations`` when given).  Truth column k holds the angle on circle
    k and is NaN for points of the other circle.
    """
    rng = np.random.default_rng(seed)
    t0 = rng.normal(mean, std, size=n_per_circle)
    t1 = rng.normal(mean, std, size=n_per_circle)
    if rotations is None:
        phi = rng.uniform(0.0, TWO_PI, size=2)
    else:
        phi = np.asarray(rotations, dtype=np.float64)

    def circle(t, rot):
        p = np.stack([np.sin(t), np.cos(t)], axis=1)
        c, s = np.cos(rot), np.sin(rot)
        rot_mat = np.array([[c, -s], [s, c]])
        return p @ rot_mat.T

    p0 = circle(t0, phi[0])
    p1 = circle(t1, phi[1])
    noise = rng.normal(0.0, noise_std, size=(2 * n_per_circle, 2))
    p0 += noise[:n_per_circle]
    p1 += noise[n_per_circle:]
    p1[:, 0] += 2.0

    # rotating (sin t, cos t) by rot places the point at parameter t - rot
    truth = np.full((2 * n_per_circle, 2), np.nan)
    truth[:n_per_circle, 0] = np.mod(t0 - phi[0], TWO_PI)
    truth[n_per_circle:, 1] = np.mod(t1 - phi[1], TWO_PI)
    pts = np.vstack([p0, p1])
    return PointCloud(pts, truth=truth, label="conjoined", seed=seed)


def _torus_points(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    x = (4.0 + 2.0 * np.cos(s)) * np.cos(t)
    y = (4.0 + 2.0 * np.cos(s)) * np.sin(t)
    z = 2.0 * np.sin(s)
    return np.stack([x, y, z], axis=1)


def gen_torus(n: int = 800, sigma: float = 0.4 * np.pi, seed: int = 0) -> PointCloud:
    """Sample a torus (tube radius 2, center radius 4) in R^3.

    Parameter pairs (s, t) are drawn from the two-component Gaussian mixture
    0.5*N((pi, 0), sigma^2 I) + 0.5*N((0, pi), sigma^2 I), so the density on
    the surface is far from uniform.  Truth columns are (s mod 2*pi,
    t mod 2*pi): column 0 winds around the tube, column 1 around the center
    hole.
    """
    rng = np.random.default_rng(seed)
    comp = rng.integers(0, 2, size=n)
    means = np.array([[np.pi, 0.0], [0.0, np.pi]])
    st = rng.normal(means[comp], sigma)
    pts = _torus_points(st[:, 0], st[:, 1])
    truth = np.mod(st, TWO_PI)
    return PointCloud(pts, truth=truth, label="torus", seed=seed)
