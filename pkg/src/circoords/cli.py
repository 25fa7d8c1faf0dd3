"""Command-line interface.

Subcommands: generate (synthetic datasets), diagram (persistence diagram and
representative cocycles), coords (circular coordinates), eval (report plus
correlation figure), plot (colored scatter of the points).  Flags may also
be given in a TOML file with one table per subcommand; explicit flags win.
The CIRCOORDS_OUTDIR environment variable sets the default output directory.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .circular import evaluate
from .errors import CircoordsError, FormatError
from .geometry import (
    PointCloud,
    gen_conjoined_circles,
    gen_noisy_circle,
    gen_torus,
    gen_trefoil,
    pairwise_distances,
)
from .lp import LpConfig
from .persistence import DEFAULT_PRIME, persistence_diagram
from .pipeline import METHODS, compute_circular_coordinates
from .plotting import correlation_figure, pca_project, save_svg, scatter_figure
from .rips import build_rips

OUTDIR_ENV = "CIRCOORDS_OUTDIR"

DATASETS = ("circle", "trefoil", "conjoined", "torus")

# (n, noise) defaults per dataset; n counts points per circle for "conjoined"
_GEN_DEFAULTS = {
    "circle": (300, 0.07),
    "trefoil": (900, 0.04),
    "conjoined": (300, 0.07),
    "torus": (800, None),
}


class _Parser(argparse.ArgumentParser):
    """Parser whose failures surface as single-line errors, not usage dumps."""

    def error(self, message):
        raise ValueError(message)


def _outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "."))


def _resolve_out(explicit, default_name: str) -> Path:
    if explicit is not None:
        return Path(explicit)
    return _outdir() / default_name


def _parse_schedule(value) -> tuple[int, int]:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return int(value[0]), int(value[1])
    if isinstance(value, str):
        lo, sep, hi = value.partition(":")
        if sep:
            return int(lo), int(hi)
    raise ValueError(f"schedule must be 'lo:hi' or a [lo, hi] pair, got {value!r}")


def _merge_config(args: argparse.Namespace, command: str, defaults: dict) -> dict:
    """Layer builtin defaults, then the TOML table, then explicit flags."""
    cfg = dict(defaults)
    ns = dict(vars(args))
    ns.pop("command", None)
    ns.pop("func", None)
    config_path = ns.pop("config", None)
    if config_path is not None:
        table = io.read_toml(config_path).get(command, {})
        for key, val in table.items():
            norm = key.replace("-", "_")
            if norm not in cfg:
                raise FormatError(f"unknown config key {key!r} in [{command}]")
            cfg[norm] = val
    cfg.update(ns)
    return cfg


def _lp_config(cfg: dict) -> LpConfig:
    schedule = cfg.get("schedule")
    if schedule is not None:
        schedule = _parse_schedule(schedule)
    p = cfg.get("p", 2.0)
    if isinstance(p, str):
        p = math.inf if p in ("inf", "infinity") else float(p)
    return LpConfig(
        p=p,
        eta=float(cfg.get("eta", 0.005)),
        tau=float(cfg.get("tau", 1e-4)),
        max_epochs=int(cfg.get("max_epochs", 200_000)),
        schedule=schedule,
        temperature_start=float(cfg.get("temperature", 1.0)),
        init=str(cfg.get("init", "l2_solution")),
    )


def cmd_generate(args: argparse.Namespace) -> int:
    defaults = {
        "n": None,
        "seed": 0,
        "noise": None,
        "sigma": 0.4 * np.pi,
        "out": None,
    }
    cfg = _merge_config(args, "generate", defaults)
    dataset = cfg["dataset"]
    if dataset not in DATASETS:
        raise ValueError(f"unknown dataset {dataset!r}; choose from {', '.join(DATASETS)}")
    n_default, noise_default = _GEN_DEFAULTS[dataset]
    n = int(cfg["n"]) if cfg["n"] is not None else n_default
    noise = float(cfg["noise"]) if cfg["noise"] is not None else noise_default
    seed = int(cfg["seed"])
    if dataset == "circle":
        cloud = gen_noisy_circle(n=n, noise_std=noise, seed=seed)
    elif dataset == "trefoil":
        cloud = gen_trefoil(n=n, noise_std=noise, seed=seed)
    elif dataset == "conjoined":
        cloud = gen_conjoined_circles(n_per_circle=n, noise_std=noise, seed=seed)
    else:
        cloud = gen_torus(n=n, sigma=float(cfg["sigma"]), seed=seed)
    out = _resolve_out(cfg["out"], f"{dataset}.csv")
    io.write_cloud_csv(out, cloud)
    print(f"wrote {out} ({cloud.n_points} points, dim {cloud.dim})")
    return 0


def cmd_diagram(args: argparse.Namespace) -> int:
    defaults = {
        "threshold": None,
        "prime": DEFAULT_PRIME,
        "top": 3,
        "out_dir": None,
    }
    cfg = _merge_config(args, "diagram", defaults)
    cloud = io.read_cloud_csv(cfg["input"])
    threshold = None if cfg["threshold"] is None else float(cfg["threshold"])
    diagram = persistence_diagram(cloud, threshold=threshold, prime=int(cfg["prime"]))
    out_dir = Path(cfg["out_dir"]) if cfg["out_dir"] is not None else _outdir()
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(cfg["input"]).stem
    diagram_path = out_dir / f"{stem}_diagram.csv"
    io.write_diagram_csv(diagram_path, diagram)
    print(f"wrote {diagram_path} ({len(diagram)} pairs)")
    for pair in diagram[: max(0, int(cfg["top"]))]:
        path = out_dir / f"{stem}_cocycle{pair.pair_id}.csv"
        io.write_cocycle_csv(path, pair.representative)
        print(f"wrote {path} (pair {pair.pair_id}: birth {pair.birth:g}, death {pair.death:g})")
    return 0


def cmd_coords(args: argparse.Namespace) -> int:
    defaults = {
        "method": "l2",
        "pair_id": 0,
        "epsilon": None,
        "threshold": None,
        "prime": DEFAULT_PRIME,
        "t": None,
        "p": 2.0,
        "eta": 0.005,
        "tau": 1e-4,
        "max_epochs": 200_000,
        "schedule": None,
        "temperature": 1.0,
        "init": "l2_solution",
        "out": None,
        "dump_weights": False,
    }
    cfg = _merge_config(args, "coords", defaults)
    cloud = io.read_cloud_csv(cfg["input"])
    method = str(cfg["method"])
    result = compute_circular_coordinates(
        cloud,
        method=method,
        pair_id=int(cfg["pair_id"]),
        threshold=None if cfg["threshold"] is None else float(cfg["threshold"]),
        prime=int(cfg["prime"]),
        epsilon=None if cfg["epsilon"] is None else float(cfg["epsilon"]),
        t=None if cfg["t"] is None else float(cfg["t"]),
        lp_cfg=_lp_config(cfg),
    )
    stem = Path(cfg["input"]).stem
    out = _resolve_out(cfg["out"], f"{stem}_{method}_coords.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    io.write_coords_csv(out, result.map)
    meta = {
        "input": str(cfg["input"]),
        "method": method,
        "source": result.map.source,
        "pair_id": int(result.pair.pair_id),
        "birth": float(result.pair.birth),
        "death": float(result.pair.death),
        "epsilon": float(result.epsilon),
        "prime": int(result.pair.prime),
    }
    io.write_json(out.with_suffix(".meta.json"), meta)
    print(f"wrote {out} (method {result.map.source}, epsilon {result.epsilon:g})")
    if result.trace is not None:
        trace_path = out.with_name(out.stem + "_trace.csv")
        io.write_trace_csv(trace_path, result.trace)
        print(f"wrote {trace_path} ({len(result.trace)} iterations)")
    if cfg["dump_weights"] and result.weights is not None:
        wpath = out.with_name(out.stem + "_weights.csv")
        io.write_weights_csv(wpath, result.complex, result.weights)
        print(f"wrote {wpath}")
    return 0


def _load_coords_with_meta(coords_path):
    meta_path = Path(coords_path).with_suffix(".meta.json")
    meta = io.read_json(meta_path) if meta_path.exists() else {}
    cmap = io.read_coords_csv(coords_path, source=meta.get("source", ""))
    return cmap, meta


def cmd_eval(args: argparse.Namespace) -> int:
    defaults = {
        "truth_col": 0,
        "n_anchors": 12,
        "epsilon": None,
        "out_dir": None,
    }
    cfg = _merge_config(args, "eval", defaults)
    cmap, meta = _load_coords_with_meta(cfg["coords"])
    cloud = io.read_cloud_csv(cfg["input"])
    if cloud.truth is None:
        raise FormatError(f"{cfg['input']}: no truth columns to evaluate against")
    col = int(cfg["truth_col"])
    if not 0 <= col < cloud.truth.shape[1]:
        raise ValueError(f"truth column {col} out of range")
    if cloud.n_points != cmap.n_points:
        raise ValueError("coordinates and points disagree on n")
    epsilon = cfg["epsilon"] if cfg["epsilon"] is not None else meta.get("epsilon")
    if epsilon is None:
        raise FormatError("no epsilon: pass --epsilon or keep the coords .meta.json sidecar")
    complex = build_rips(cloud, float(epsilon), distances=pairwise_distances(cloud), skeleton=1)
    report = evaluate(
        cmap, cloud.truth[:, col], complex=complex, n_anchors=int(cfg["n_anchors"])
    )
    out_dir = Path(cfg["out_dir"]) if cfg["out_dir"] is not None else _outdir()
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(cfg["coords"]).stem
    report_path = out_dir / f"{stem}_report.json"
    scatter_path = out_dir / f"{stem}_scatter.csv"
    figure_path = out_dir / f"{stem}_correlation.svg"
    io.write_report_json(report_path, report)
    io.write_scatter_csv(scatter_path, report)
    valid = ~np.isnan(report.scatter[:, 0])
    save_svg(correlation_figure(report.scatter[valid], method=report.method), figure_path)
    print(f"wrote {report_path} {scatter_path} {figure_path}")
    print(f"winding={report.winding} linearity_score={report.linearity_score:.4f}")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    defaults = {"out": None}
    cfg = _merge_config(args, "plot", defaults)
    cmap, meta = _load_coords_with_meta(cfg["coords"])
    cloud = io.read_cloud_csv(cfg["input"])
    if cloud.n_points != cmap.n_points:
        raise ValueError("coordinates and points disagree on n")
    xy = cloud.points if cloud.dim == 2 else pca_project(cloud.points)
    title = meta.get("source", "")
    out = _resolve_out(cfg["out"], f"{Path(cfg['coords']).stem}_plot.svg")
    out.parent.mkdir(parents=True, exist_ok=True)
    save_svg(scatter_figure(xy, cmap.theta, title=title), out)
    print(f"wrote {out}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="circoords", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sup = argparse.SUPPRESS

    g = sub.add_parser("generate", help="write a synthetic dataset CSV")
    g.add_argument("dataset", choices=DATASETS)
    g.add_argument("--n", type=int, default=sup, help="points (per circle for conjoined)")
    g.add_argument("--seed", type=int, default=sup)
    g.add_argument("--noise", type=float, default=sup, help="coordinate noise std")
    g.add_argument("--sigma", type=float, default=sup, help="torus angle-mixture spread")
    g.add_argument("--out", default=sup)
    g.add_argument("--config", default=sup, help="TOML file with a [generate] table")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("diagram", help="persistence diagram and cocycles")
    d.add_argument("input", help="point-cloud CSV")
    d.add_argument("--threshold", type=float, default=sup)
    d.add_argument("--prime", type=int, default=sup)
    d.add_argument("--top", type=int, default=sup, help="how many cocycle files to write")
    d.add_argument("--out-dir", dest="out_dir", default=sup)
    d.add_argument("--config", default=sup)
    d.set_defaults(func=cmd_diagram)

    c = sub.add_parser("coords", help="circular coordinates for one pair")
    c.add_argument("input", help="point-cloud CSV")
    c.add_argument("--method", choices=METHODS, default=sup)
    c.add_argument("--pair-id", dest="pair_id", type=int, default=sup)
    c.add_argument("--epsilon", type=float, default=sup)
    c.add_argument("--threshold", type=float, default=sup)
    c.add_argument("--prime", type=int, default=sup)
    c.add_argument("--t", type=float, default=sup, help="wdgl kernel bandwidth")
    c.add_argument("--p", default=sup, help="norm exponent for method lp")
    c.add_argument("--eta", type=float, default=sup)
    c.add_argument("--tau", type=float, default=sup)
    c.add_argument("--max-epochs", dest="max_epochs", type=int, default=sup)
    c.add_argument("--schedule", default=sup, help="lo:hi for linf_schedule")
    c.add_argument("--temperature", type=float, default=sup)
    c.add_argument("--init", choices=("zeros", "l2_solution"), default=sup)
    c.add_argument("--out", default=sup)
    c.add_argument("--dump-weights", dest="dump_weights", action="store_true", default=sup)
    c.add_argument("--config", default=sup)
    c.set_defaults(func=cmd_coords)

    e = sub.add_parser("eval", help="score coordinates against truth")
    e.add_argument("coords", help="coordinates CSV from the coords command")
    e.add_argument("input", help="point-cloud CSV with truth columns")
    e.add_argument("--truth-col", dest="truth_col", type=int, default=sup)
    e.add_argument("--n-anchors", dest="n_anchors", type=int, default=sup)
    e.add_argument("--epsilon", type=float, default=sup)
    e.add_argument("--out-dir", dest="out_dir", default=sup)
    e.add_argument("--config", default=sup)
    e.set_defaults(func=cmd_eval)

    p = sub.add_parser("plot", help="scatter of the points colored by theta")
    p.add_argument("coords")
    p.add_argument("input")
    p.add_argument("--out", default=sup)
    p.add_argument("--config", default=sup)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CircoordsError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: invalid: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
