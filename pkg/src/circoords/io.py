"""CSV/JSON/TOML serialization with reproducible byte-level formatting.

Every float is written as %.17g (IEEE-754 round-trip precision) and every
file gets LF line endings, so identical inputs produce identical bytes on
any platform.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .circular import CircularMap, EvalReport
from .errors import FormatError
from .geometry import PointCloud
from .laplacian import WeightScheme
from .lp import LossTrace
from .persistence import Cochain1, PersistencePair
from .rips import RipsComplex

FLOAT_FMT = "%.17g"


def _g17(x: float) -> str:
    return FLOAT_FMT % float(x)


def _open_write(path):
    return open(path, "w", encoding="utf-8", newline="")


def write_cloud_csv(path, cloud: PointCloud) -> None:
    """Point cloud as `x0,..,x{m-1}[,truth0[,truth1]]`, one row per point."""
    header = [f"x{k}" for k in range(cloud.dim)]
    n_truth = 0 if cloud.truth is None else cloud.truth.shape[1]
    header += [f"truth{k}" for k in range(n_truth)]
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in range(cloud.n_points):
            row = [_g17(v) for v in cloud.points[r]]
            if n_truth:
                row += [_g17(v) for v in cloud.truth[r]]
            w.writerow(row)


def read_cloud_csv(path) -> PointCloud:
    """Inverse of write_cloud_csv; truth columns are optional."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise FormatError(f"{path}: empty file")
    header = rows[0]
    n_x = sum(1 for h in header if h.startswith("x"))
    n_truth = sum(1 for h in header if h.startswith("truth"))
    if n_x == 0 or n_x + n_truth != len(header):
        raise FormatError(f"{path}: header must be x0..x{{m-1}}[,truth0[,truth1]]")
    if header != [f"x{k}" for k in range(n_x)] + [f"truth{k}" for k in range(n_truth)]:
        raise FormatError(f"{path}: unexpected column order {header!r}")
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric cell ({exc})") from exc
    if data.ndim != 2 or data.shape[1] != len(header):
        raise FormatError(f"{path}: ragged rows")
    truth = data[:, n_x:] if n_truth else None
    return PointCloud(points=data[:, :n_x], truth=truth, label=Path(path).stem)


def write_diagram_csv(path, pairs: list[PersistencePair]) -> None:
    """Diagram as `birth,death,lifetime,pair_id` rows."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["birth", "death", "lifetime", "pair_id"])
        for p in pairs:
            w.writerow([_g17(p.birth), _g17(p.death), _g17(p.lifetime), p.pair_id])


def write_cocycle_csv(path, cochain: Cochain1) -> None:
    """Representative cocycle as `edge_i,edge_j,value` rows."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["edge_i", "edge_j", "value"])
        for (i, j), v in zip(cochain.edges, cochain.values):
            val = int(v) if cochain.domain in ("mod-p", "integer") else _g17(v)
            w.writerow([int(i), int(j), val])


def write_edges_csv(path, complex: RipsComplex) -> None:
    """Edge list with lengths, for debugging complexes."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "j", "length"])
        for (i, j), ln in zip(complex.edges, complex.edge_lengths):
            w.writerow([int(i), int(j), _g17(ln)])


def write_weights_csv(path, complex: RipsComplex, scheme: WeightScheme) -> None:
    """Weight dump as `edge_i,edge_j,q` rows."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["edge_i", "edge_j", "q"])
        for (i, j), q in zip(complex.edges, scheme.q):
            w.writerow([int(i), int(j), _g17(q)])


def write_coords_csv(path, cmap: CircularMap) -> None:
    """Coordinates as `index,theta,component`, aligned with input row order."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "theta", "component"])
        for k in range(cmap.n_points):
            w.writerow([k, _g17(cmap.theta[k]), int(cmap.component_id[k])])


def read_coords_csv(path, source: str = "") -> CircularMap:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["index", "theta", "component"]:
        raise FormatError(f"{path}: expected header index,theta,component")
    try:
        theta = np.array([float(r[1]) for r in rows[1:]])
        comp = np.array([int(r[2]) for r in rows[1:]], dtype=np.int64)
    except (ValueError, IndexError) as exc:
        raise FormatError(f"{path}: bad row ({exc})") from exc
    return CircularMap(theta=theta, component_id=comp, source=source)


def write_scatter_csv(path, report: EvalReport) -> None:
    """Correlation scatter as `truth,theta,method` rows (truth in turns)."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["truth", "theta", "method"])
        for truth, theta in report.scatter:
            w.writerow([_g17(truth), _g17(theta), report.method])


def write_trace_csv(path, trace: LossTrace) -> None:
    """Optimization trace as `iter,loss,norm_kind,p_or_t` rows."""
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iter", "loss", "norm_kind", "p_or_t"])
        for k in range(len(trace)):
            w.writerow(
                [
                    int(trace.iterations[k]),
                    _g17(trace.losses[k]),
                    trace.norm_kinds[k],
                    _g17(trace.p_or_t[k]),
                ]
            )


def write_report_json(path, report: EvalReport) -> None:
    payload = {
        "method": report.method,
        "winding": int(report.winding),
        "linearity_score": float(report.linearity_score),
        "n_points": int(len(report.scatter)),
    }
    write_json(path, payload)


def write_json(path, payload: dict) -> None:
    with _open_write(path) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def read_toml(path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(f"{path}: invalid TOML ({exc})") from exc
