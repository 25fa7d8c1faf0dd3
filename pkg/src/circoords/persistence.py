"""Degree-1 persistent cohomology over Z_p with representative cocycles.

The reduction processes simplices in filtration order and maintains the live
cocycles as sparse columns with representative annotations.  Edges are handled
first (a union-find decides which edges merge components and which start a
one-dimensional class); triangles then stream through in filtration order and
each either kills the youngest live class whose coboundary is nonzero on it or
starts a two-dimensional class, which we discard.  Processing all edges before
the triangles is equivalent to strict filtration order here because a class
born at scale u keeps its single-edge support until triangles of scale >= u
arrive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LiftError
from .geometry import PointCloud, enclosing_radius, pairwise_distances
from .rips import RipsComplex, coboundary1

DEFAULT_PRIME = 47


@dataclass
class Cochain1:
    """A function on oriented edges (orientation low index -> high index).

    Attributes:
        edges: (m, 2) int32 array of vertex pairs, each row i < j.
        values: (m,) array of edge values.
        domain: "mod-p", "integer", or "real".
        prime: p for the "mod-p" domain, None otherwise.
    """

    edges: np.ndarray
    values: np.ndarray
    domain: str
    prime: int | None = None

    def __post_init__(self):
        if self.domain not in ("mod-p", "integer", "real"):
            raise ValueError(f"unknown coefficient domain {self.domain!r}")
        if len(self.edges) != len(self.values):
            raise ValueError("one value per edge required")


@dataclass
class PersistencePair:
    """One H^1 class: birth/death scales and a representative cocycle.

    The representative lives on the death-scale complex and restricts to a
    cocycle at every scale in [birth, death).  ``death_capped`` marks classes
    still alive at the filtration threshold; their recorded death is the
    threshold itself.
    """

    birth: float
    death: float
    representative: Cochain1
    prime: int
    death_capped: bool = False
    pair_id: int = -1

    @property
    def lifetime(self) -> float:
        return self.death - self.birth


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def centered_residue(values: np.ndarray | int, prime: int) -> np.ndarray | int:
    """Map Z_p values in [0, p) to the congruent integer in (-p/2, p/2]."""
    v = np.asarray(values, dtype=np.int64)
    out = np.where(v > (prime - 1) // 2, v - prime, v)
    return int(out) if np.isscalar(values) or out.ndim == 0 else out


def persistence_diagram(
    cloud: PointCloud | np.ndarray,
    threshold: float | None = None,
    prime: int = DEFAULT_PRIME,
    distances: np.ndarray | None = None,
) -> list[PersistencePair]:
    """H^1 persistence of the Rips filtration, pairs sorted by lifetime.

    Args:
        cloud: point cloud (or raw point array).
        threshold: filtration cap; simplices above it are not built.  Defaults
            to the enclosing radius, at which every class has died.
        prime: field characteristic (must be prime).
        distances: optional precomputed distance matrix.

    Returns:
        Pairs with positive lifetime, sorted by lifetime descending.  Classes
        still alive at the threshold are reported with death = threshold and
        ``death_capped=True``.

    Raises:
        ValueError: non-prime ``prime`` or nonpositive ``threshold``.
    """
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    d = distances if distances is not None else pairwise_distances(cloud)
    n = d.shape[0]
    if threshold is None:
        threshold = enclosing_radius(d)
    if threshold <= 0:
        raise ValueError("threshold must be positive")

    iu, ju = np.triu_indices(n, k=1)
    keep = d[iu, ju] <= threshold
    ei, ej = iu[keep], ju[keep]
    elen = d[ei, ej]
    order = np.lexsort((ej, ei, elen))
    ei, ej, elen = ei[order], ej[order], elen[order]
    n_edges = len(ei)

    # union-find: edges that merge two components kill an H^0 class and do
    # not start a cocycle; the rest each start a live 1-cocycle.
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    creators: list[int] = []
    ei_l, ej_l = ei.tolist(), ej.tolist()
    for e in range(n_edges):
        ri, rj = find(ei_l[e]), find(ej_l[e])
        if ri == rj:
            creators.append(e)
        else:
            parent[ri] = rj

    # triangle enumeration with per-triangle edge indices
    eid = np.full((n, n), -1, dtype=np.int64)
    eid[ei, ej] = np.arange(n_edges)
    eid[ej, ei] = np.arange(n_edges)
    adj = np.zeros((n, n), dtype=bool)
    adj[ei, ej] = True
    adj[ej, ei] = True
    idx = np.arange(n)
    tri_ab, tri_ac, tri_bc, tri_val = [], [], [], []
    for e in range(n_edges):
        i, j = ei_l[e], ej_l[e]
        ks = idx[(adj[i] & adj[j]) & (idx > j)]
        if len(ks) == 0:
            continue
        tri_ab.append(np.full(len(ks), e, dtype=np.int64))
        tri_ac.append(eid[i, ks])
        tri_bc.append(eid[j, ks])
        tri_val.append(np.maximum(elen[e], np.maximum(d[i, ks], d[j, ks])))
    if tri_ab:
        ab = np.concatenate(tri_ab)
        ac = np.concatenate(tri_ac)
        bc = np.concatenate(tri_bc)
        tval = np.concatenate(tri_val)
        inside = tval <= threshold
        ab, ac, bc, tval = ab[inside], ac[inside], bc[inside], tval[inside]
        # deterministic filtration order: value, then ascending vertex triple,
        # for which (value, ab, ac) is an equivalent key
        torder = np.lexsort((ac, ab, tval))
        ab, ac, bc, tval = ab[torder], ac[torder], bc[torder], tval[torder]
    else:
        ab = ac = bc = np.zeros(0, dtype=np.int64)
        tval = np.zeros(0)

    pairs_raw = _reduce(creators, elen, ab, ac, bc, tval, prime, float(threshold))

    pairs = []
    for creator, birth, death, col, capped in pairs_raw:
        items = sorted(((ei_l[e], ej_l[e]), v) for e, v in col.items())
        rep_edges = np.array([ij for ij, _ in items], dtype=np.int32).reshape(-1, 2)
        rep_vals = np.array([v for _, v in items], dtype=np.int64)
        rep = Cochain1(edges=rep_edges, values=rep_vals, domain="mod-p", prime=prime)
        pairs.append(
            (creator, PersistencePair(birth=float(birth), death=float(death),
                                      representative=rep, prime=prime,
                                      death_capped=capped))
        )
    pairs.sort(key=lambda cp: (-cp[1].lifetime, cp[1].birth, cp[0]))
    out = [p for _, p in pairs]
    for k, p in enumerate(out):
        p.pair_id = k
    return out


def _reduce(creators, elen, ab, ac, bc, tval, prime, threshold):
    """Annotation reduction.  Returns (creator, birth, death, column, capped)."""
    inverse = [0] + [pow(v, prime - 2, prime) for v in range(1, prime)]
    live: dict[int, dict[int, int]] = {}
    rows: dict[int, list[int]] = {}
    for e in creators:
        live[e] = {e: 1}
        rows[e] = [e]
    results = []
    elen_l = elen.tolist()
    ab_l, ac_l, bc_l, tval_l = ab.tolist(), ac.tolist(), bc.tolist(), tval.tolist()
    empty: list[int] = []
    for t in range(len(ab_l)):
        a, b, c = ab_l[t], ac_l[t], bc_l[t]
        cand: dict[int, int] = {}
        for cid in rows.get(a, empty):
            col = live.get(cid)
            if col is not None and cid not in cand:
                v = (col.get(a, 0) - col.get(b, 0) + col.get(c, 0)) % prime
                if v:
                    cand[cid] = v
        for cid in rows.get(b, empty):
            col = live.get(cid)
            if col is not None and cid not in cand:
                v = (col.get(a, 0) - col.get(b, 0) + col.get(c, 0)) % prime
                if v:
                    cand[cid] = v
        for cid in rows.get(c, empty):
            col = live.get(cid)
            if col is not None and cid not in cand:
                v = (col.get(a, 0) - col.get(b, 0) + col.get(c, 0)) % prime
                if v:
                    cand[cid] = v
        if not cand:
            continue
        star = max(cand)
        c_star = cand.pop(star)
        col_star = live.pop(star)
        birth = elen_l[star]
        death = tval_l[t]
        if death > birth:
            results.append((star, birth, death, col_star, False))
        if cand:
            inv = inverse[c_star]
            for cid, cv in cand.items():
                coef = (cv * inv) % prime
                col = live[cid]
                for e, v in col_star.items():
                    nv = (col.get(e, 0) - coef * v) % prime
                    if nv:
                        if e not in col:
                            r = rows.get(e)
                            if r is None:
                                rows[e] = [cid]
                            else:
                                r.append(cid)
                        col[e] = nv
                    elif e in col:
                        del col[e]
    for cid, col in live.items():
        birth = elen_l[cid]
        if threshold > birth:
            results.append((cid, birth, threshold, col, True))
    return results


def select_epsilon(pair: PersistencePair) -> float:
    """Scale for coordinate extraction: the midpoint (birth + death) / 2.

    Raises:
        ValueError: infinite death (caller must supply a scale explicitly).
    """
    if not np.isfinite(pair.death):
        raise ValueError("pair has infinite death; supply epsilon explicitly")
    return 0.5 * (pair.birth + pair.death)


def restrict_and_lift(pair: PersistencePair, complex_at_eps: RipsComplex) -> Cochain1:
    """Restrict a representative to a smaller scale and lift to integers.

    The mod-p values are mapped to centered residues in (-p/2, p/2]; entries
    on edges longer than the target scale are dropped.  The result is checked
    to be an integer cocycle on every triangle of the target complex.

    Args:
        pair: source class; the target scale must lie in [birth, death).
        complex_at_eps: complex built on the same points at the target scale.

    Returns:
        Integer Cochain1 aligned with ``complex_at_eps.edges``.

    Raises:
        LiftError: the lifted cochain fails the integer cocycle check.
    """
    rep = pair.representative
    values = np.zeros(complex_at_eps.n_edges, dtype=np.int64)
    if len(rep.edges):
        ids = complex_at_eps.edge_ids(rep.edges)
        keep = ids >= 0
        values[ids[keep]] = centered_residue(rep.values[keep], pair.prime)
    d1 = coboundary1(complex_at_eps)
    residual = d1 @ values
    bad = np.nonzero(residual)[0]
    if len(bad):
        t = complex_at_eps.triangles[bad[0]]
        raise LiftError(
            f"lifted cochain is not an integer cocycle: d1*alpha = "
            f"{residual[bad[0]]} on triangle {tuple(int(v) for v in t)} "
            f"({len(bad)} violations); the class is not liftable at this scale"
        )
    return Cochain1(edges=complex_at_eps.edges, values=values, domain="integer")
