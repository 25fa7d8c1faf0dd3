"""Vietoris-Rips 2-skeletons and the integer coboundary operators d0, d1."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .geometry import PointCloud, pairwise_distances


@dataclass
class RipsComplex:
    """The 2-skeleton of a Vietoris-Rips complex at scale ``epsilon``.

    Attributes:
        n_vertices: vertex count.
        epsilon: scale; all simplex filtration values are <= epsilon.
        edges: (E, 2) int32, each row (i, j) with i < j, sorted by
            (length, i, j).
        edge_lengths: (E,) float64, aligned with ``edges``.
        triangles: (T, 3) int32, rows (i, j, k) with i < j < k, sorted by
            (filtration value, i, j, k).
        triangle_values: (T,) float64 filtration values (max edge length).
    """

    n_vertices: int
    epsilon: float
    edges: np.ndarray
    edge_lengths: np.ndarray
    triangles: np.ndarray
    triangle_values: np.ndarray
    _edge_keys: np.ndarray | None = field(default=None, repr=False)
    _edge_key_order: np.ndarray | None = field(default=None, repr=False)
    _components: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def _key_index(self):
        if self._edge_keys is None:
            keys = self.edges[:, 0].astype(np.int64) * self.n_vertices + self.edges[:, 1]
            order = np.argsort(keys)
            self._edge_keys = keys[order]
            self._edge_key_order = order
        return self._edge_keys, self._edge_key_order

    def edge_ids(self, pairs: np.ndarray) -> np.ndarray:
        """Map vertex pairs (any orientation) to edge indices, -1 if absent."""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if len(pairs) == 0:
            return np.zeros(0, dtype=np.int64)
        keys, order = self._key_index()
        if len(keys) == 0:
            return np.full(len(pairs), -1, dtype=np.int64)
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        want = lo * self.n_vertices + hi
        pos = np.clip(np.searchsorted(keys, want), 0, len(keys) - 1)
        return np.where(keys[pos] == want, order[pos], -1)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return int(self.edge_ids(np.array([[i, j]]))[0]) >= 0

    def vertex_degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n_vertices)

    def components(self) -> tuple[np.ndarray, np.ndarray]:
        """Connected components of the epsilon-graph.

        Returns:
            (labels, reps): per-vertex component label, and per-label
            representative vertex (the lowest index in the component).
        """
        if self._components is None:
            n = self.n_vertices
            adj = sparse.coo_matrix(
                (np.ones(len(self.edges)), (self.edges[:, 0], self.edges[:, 1])),
                shape=(n, n),
            )
            _, labels = connected_components(adj, directed=False)
            n_comp = labels.max() + 1 if n else 0
            reps = np.full(n_comp, n, dtype=np.int64)
            np.minimum.at(reps, labels, np.arange(n))
            self._components = (labels, reps)
        return self._components


def build_rips(
    cloud: PointCloud | np.ndarray,
    epsilon: float,
    distances: np.ndarray | None = None,
    skeleton: int = 2,
) -> RipsComplex:
    """Build the Rips complex at scale ``epsilon``.

    Args:
        cloud: point cloud (or raw (n, m) array).
        epsilon: scale; pairs at distance <= epsilon become edges, triples
            whose three edges exist become triangles.
        distances: optional precomputed distance matrix.
        skeleton: 1 to skip triangle enumeration, 2 (default) for the full
            2-skeleton.

    Returns:
        RipsComplex with deterministically ordered simplices.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    d = distances if distances is not None else pairwise_distances(cloud)
    n = d.shape[0]

    iu, ju = np.triu_indices(n, k=1)
    keep = d[iu, ju] <= epsilon
    ei, ej = iu[keep], ju[keep]
    elen = d[ei, ej]
    order = np.lexsort((ej, ei, elen))
    ei, ej, elen = ei[order], ej[order], elen[order]
    edges = np.stack([ei, ej], axis=1).astype(np.int32)

    if skeleton >= 2 and len(edges) > 0:
        adj = np.zeros((n, n), dtype=bool)
        adj[ei, ej] = True
        adj[ej, ei] = True
        idx = np.arange(n)
        tis, tjs, tks = [], [], []
        for i, j in zip(ei.tolist(), ej.tolist()):
            ks = idx[(adj[i] & adj[j]) & (idx > j)]
            if len(ks):
                tis.append(np.full(len(ks), i))
                tjs.append(np.full(len(ks), j))
                tks.append(ks)
        if tis:
            ti = np.concatenate(tis)
            tj = np.concatenate(tjs)
            tk = np.concatenate(tks)
            tval = np.maximum(d[ti, tj], np.maximum(d[ti, tk], d[tj, tk]))
            torder = np.lexsort((tk, tj, ti, tval))
            triangles = np.stack([ti, tj, tk], axis=1)[torder].astype(np.int32)
            tri_values = tval[torder]
        else:
            triangles = np.zeros((0, 3), dtype=np.int32)
            tri_values = np.zeros(0)
    else:
        triangles = np.zeros((0, 3), dtype=np.int32)
        tri_values = np.zeros(0)

    return RipsComplex(
        n_vertices=n,
        epsilon=float(epsilon),
        edges=edges,
        edge_lengths=elen.astype(np.float64),
        triangles=triangles,
        triangle_values=tri_values.astype(np.float64),
    )


def coboundary0(complex: RipsComplex) -> sparse.csr_matrix:
    """d0: vertex functions to edge functions, (d0 f)(ij) = f(j) - f(i).

    Row for edge (i, j): -1 at column i, +1 at column j.  Integer entries.
    """
    e = complex.n_edges
    rows = np.repeat(np.arange(e), 2)
    cols = complex.edges.ravel().astype(np.int64)
    data = np.tile(np.array([-1, 1], dtype=np.int64), e)
    return sparse.csr_matrix((data, (rows, cols)), shape=(e, complex.n_vertices))


def coboundary1(complex: RipsComplex) -> sparse.csr_matrix:
    """d1: edge functions to triangle functions.

    Row for triangle (i, j, k): +1 at edge (i, j), -1 at edge (i, k),
    +1 at edge (j, k).  Integer entries; d1 @ d0 == 0 exactly.
    """
    t = complex.n_triangles
    if t == 0:
        return sparse.csr_matrix((0, complex.n_edges), dtype=np.int64)
    tri = complex.triangles.astype(np.int64)
    pairs = np.concatenate([tri[:, [0, 1]], tri[:, [0, 2]], tri[:, [1, 2]]])
    ids = complex.edge_ids(pairs)
    if np.any(ids < 0):
        raise RuntimeError("triangle references a missing edge")
    rows = np.tile(np.arange(t), 3)
    data = np.repeat(np.array([1, -1, 1], dtype=np.int64), t)
    return sparse.csr_matrix((data, (rows, ids)), shape=(t, complex.n_edges))
