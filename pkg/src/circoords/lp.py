"""L^p and L^infinity circular coordinates by full-batch gradient descent.

Minimizes ||alpha + d0 f||_p over vertex potentials f, for finite p, for the
max norm directly (subgradient), by an increasing-p schedule, and by a
softmax-with-temperature surrogate.  Plain descent with a fixed learning
rate, no momentum or line search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .laplacian import gauge_fix, harmonic_solve
from .persistence import Cochain1
from .rips import RipsComplex

# Exponent cap.  The max-factored norm is stable well past this, but the
# objective's gradient carries no information once u^(p-1) underflows
# everywhere off the argmax.
P_CAP = 10_000.0

DEFAULT_ETA = 0.005
DEFAULT_TAU = 1e-4
DEFAULT_MAX_EPOCHS = 200_000


@dataclass
class LpConfig:
    """Hyperparameters for the coordinate optimizers.

    Attributes:
        p: norm exponent, a real >= 1 or math.inf.
        eta: learning rate.
        tau: stop a smooth phase once |previous loss - loss| drops below this.
        max_epochs: total iteration budget across all phases.
        schedule: integer range (p_start, p_end) for the increasing-p run.
        temperature_start: initial softmax temperature.
        init: "l2_solution" warm start or "zeros".
    """

    p: float = 2.0
    eta: float = DEFAULT_ETA
    tau: float = DEFAULT_TAU
    max_epochs: int = DEFAULT_MAX_EPOCHS
    schedule: tuple[int, int] | None = None
    temperature_start: float = 1.0
    init: str = "l2_solution"

    def __post_init__(self) -> None:
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")
        if not math.isinf(self.p):
            if self.p < 1:
                raise ValueError("p must be >= 1 or infinity")
            if self.p > P_CAP:
                raise ValueError(f"p exceeds the overflow cap {P_CAP:g}")
        if self.schedule is not None:
            lo, hi = self.schedule
            if lo < 2:
                raise ValueError("schedule must start at p >= 2")
            if hi < lo:
                raise ValueError("schedule end must be >= its start")
            if hi > P_CAP:
                raise ValueError(f"schedule end exceeds the overflow cap {P_CAP:g}")
        if self.temperature_start <= 0:
            raise ValueError("temperature_start must be positive")
        if self.init not in ("zeros", "l2_solution"):
            raise ValueError(f"unknown init {self.init!r}")


@dataclass
class LossTrace:
    """Per-iteration optimization record.

    Attributes:
        iterations: global iteration index, 0-based, across all phases.
        losses: objective value at each iterate.
        norm_kinds: "lp", "linf", or "softmax" per iterate.
        p_or_t: the exponent (or temperature) the objective used.
        sup_norms: max |alpha + d0 f| at each iterate, whatever the
            objective; not serialized, kept for convergence comparisons.
    """

    iterations: np.ndarray
    losses: np.ndarray
    norm_kinds: list[str]
    p_or_t: np.ndarray
    sup_norms: np.ndarray

    def __len__(self) -> int:
        return len(self.losses)


def lp_norm(x: np.ndarray, p: float) -> float:
    """||x||_p via the max-factored form M * ||x/M||_p, stable for large p."""
    if math.isinf(p):
        return float(np.abs(x).max()) if len(x) else 0.0
    loss, _ = _lp_loss_grad(np.asarray(x, dtype=np.float64), p)
    return loss


def softmax_objective(x: np.ndarray, t: float) -> float:
    """sum_e softmax(t|x|)_e * |x_e|, between mean|x| (t=0) and max|x| (t=inf)."""
    loss, _ = _softmax_loss_grad(np.asarray(x, dtype=np.float64), t)
    return loss


def _lp_loss_grad(x: np.ndarray, p: float) -> tuple[float, np.ndarray]:
    ax = np.abs(x)
    m = float(ax.max()) if len(ax) else 0.0
    if m == 0.0:
        return 0.0, np.zeros_like(x)
    u = ax / m
    up1 = u ** (p - 1.0)
    s = float(up1 @ u)
    loss = m * s ** (1.0 / p)
    grad = np.sign(x) * up1 * s ** (1.0 / p - 1.0)
    return loss, grad


def _linf_loss_grad(x: np.ndarray) -> tuple[float, np.ndarray]:
    grad = np.zeros_like(x)
    if len(x) == 0:
        return 0.0, grad
    k = int(np.argmax(np.abs(x)))  # first max wins ties
    grad[k] = np.sign(x[k])
    return float(abs(x[k])), grad


def _softmax_loss_grad(x: np.ndarray, t: float) -> tuple[float, np.ndarray]:
    ax = np.abs(x)
    if len(ax) == 0:
        return 0.0, np.zeros_like(x)
    z = t * ax
    w = np.exp(z - z.max())
    w /= w.sum()
    s = float(w @ ax)
    grad = np.sign(x) * w * (1.0 + t * (ax - s))
    return s, grad


class _Run:
    """Descent state shared across phases of one optimization."""

    def __init__(self, complex: RipsComplex, alpha: np.ndarray, cfg: LpConfig, track: str | None):
        self.i = complex.edges[:, 0]
        self.j = complex.edges[:, 1]
        self.n = complex.n_vertices
        self.alpha = alpha
        self.eta = cfg.eta
        self.tau = cfg.tau
        self.track = track  # "loss", "sup", or None (keep last iterate)
        self.k = 0
        self.best_val = math.inf
        self.best_f: np.ndarray | None = None
        self.iterations: list[int] = []
        self.losses: list[float] = []
        self.norm_kinds: list[str] = []
        self.p_or_t: list[float] = []
        self.sup_norms: list[float] = []

    def abar(self, f: np.ndarray) -> np.ndarray:
        return self.alpha + f[self.j] - f[self.i]

    def phase(self, f, loss_grad, budget: int, kind: str, label: float, stop: str = "tau"):
        """Run gradient steps under one objective.

        stop="tau" halts once |previous loss - loss| < tau, which smooth
        objectives reach as their gradient settles.  stop="budget" runs the
        full budget: the max-norm subgradient trades eta-sized loss changes
        between near-maximal edges instead of settling, so a loss-difference
        test would quit at the first tie rather than at quality.  Both modes
        exit early on an exactly zero gradient.  Returns (f, iterations
        used); the step that would follow a stop is not taken.
        """
        prev = None
        used = 0
        while used < budget:
            ab = self.abar(f)
            loss, grad_e = loss_grad(ab)
            sup = float(np.abs(ab).max()) if len(ab) else 0.0
            self.iterations.append(self.k)
            self.losses.append(loss)
            self.norm_kinds.append(kind)
            self.p_or_t.append(label)
            self.sup_norms.append(sup)
            if not math.isfinite(loss):
                raise ConvergenceError(f"loss diverged at iteration {self.k}")
            val = loss if self.track == "loss" else sup
            if self.track is not None and val < self.best_val:
                self.best_val = val
                self.best_f = f.copy()
            self.k += 1
            used += 1
            if not grad_e.any():
                return f, used
            if stop == "tau" and prev is not None and abs(prev - loss) < self.tau:
                return f, used
            prev = loss
            grad_f = np.bincount(self.j, weights=grad_e, minlength=self.n)
            grad_f -= np.bincount(self.i, weights=grad_e, minlength=self.n)
            f = f - self.eta * grad_f
            f -= f.mean()
        return f, used

    def trace(self) -> LossTrace:
        return LossTrace(
            iterations=np.asarray(self.iterations, dtype=np.int64),
            losses=np.asarray(self.losses),
            norm_kinds=list(self.norm_kinds),
            p_or_t=np.asarray(self.p_or_t),
            sup_norms=np.asarray(self.sup_norms),
        )

    def finish(self, complex: RipsComplex, f: np.ndarray):
        if self.track is not None and self.best_f is not None:
            f = self.best_f
        f = gauge_fix(f, complex)
        abar = Cochain1(edges=complex.edges, values=self.abar(f), domain="real")
        return f, abar, self.trace()


def _alpha_values(complex: RipsComplex, alpha) -> np.ndarray:
    vals = alpha.values if isinstance(alpha, Cochain1) else np.asarray(alpha)
    vals = vals.astype(np.float64)
    if len(vals) != complex.n_edges:
        raise ValueError("alpha must have one value per edge")
    return vals


def _initial_f(complex: RipsComplex, alpha: np.ndarray, init: str) -> np.ndarray:
    if init == "zeros":
        return np.zeros(complex.n_vertices)
    f, _ = harmonic_solve(complex, alpha)
    return np.asarray(f, dtype=np.float64)


def lp_coordinate(
    complex: RipsComplex, alpha, cfg: LpConfig | None = None
) -> tuple[np.ndarray, Cochain1, LossTrace]:
    """Minimize ||alpha + d0 f||_p for finite p >= 1.

    Args:
        complex: the target complex.
        alpha: cocycle on its edges (Cochain1 or array).
        cfg: hyperparameters; cfg.p must be finite.

    Returns:
        (f, alpha_bar, trace) with f gauge fixed at the best iterate seen and
        alpha_bar = alpha + d0 f.

    Raises:
        ConvergenceError: the loss became non-finite (reports the iteration).
    """
    cfg = cfg or LpConfig()
    if math.isinf(cfg.p):
        raise ValueError("p is infinite; use a linf_coordinate_* variant")
    a = _alpha_values(complex, alpha)
    run = _Run(complex, a, cfg, track="loss")
    f = _initial_f(complex, a, cfg.init)
    f, _ = run.phase(f, lambda x: _lp_loss_grad(x, cfg.p), cfg.max_epochs, "lp", float(cfg.p))
    return run.finish(complex, f)


def linf_coordinate_direct(
    complex: RipsComplex, alpha, cfg: LpConfig | None = None
) -> tuple[np.ndarray, Cochain1, LossTrace]:
    """Minimize max_e |alpha_e + (d0 f)_e| by subgradient descent.

    The subgradient is taken at the single argmax edge, lowest index on ties.
    The objective is piecewise linear, so near the optimum the iterates cycle
    among near-maximal edges instead of settling; the run therefore spends
    its whole epoch budget and returns the best iterate seen.  See
    lp_coordinate for the rest of the contract.
    """
    cfg = cfg or LpConfig(p=math.inf)
    a = _alpha_values(complex, alpha)
    run = _Run(complex, a, cfg, track="loss")
    f = _initial_f(complex, a, cfg.init)
    f, _ = run.phase(f, _linf_loss_grad, cfg.max_epochs, "linf", math.inf, stop="budget")
    return run.finish(complex, f)


def linf_coordinate_schedule(
    complex: RipsComplex, alpha, cfg: LpConfig
) -> tuple[np.ndarray, Cochain1, LossTrace]:
    """Increasing-p warm-started max-norm minimization.

    Runs p = p_start..p_end each to tau-convergence, carrying f forward, then
    spends whatever iteration budget remains on the max-norm subgradient.
    Returns the iterate with the smallest sup norm seen in any phase, since
    the finite-p phases only chase that quantity indirectly.
    """
    if cfg.schedule is None:
        raise ValueError("cfg.schedule is required")
    lo, hi = cfg.schedule
    a = _alpha_values(complex, alpha)
    run = _Run(complex, a, cfg, track="sup")
    f = _initial_f(complex, a, cfg.init)
    budget = cfg.max_epochs
    for p in range(lo, hi + 1):
        if budget <= 0:
            break
        f, used = run.phase(f, lambda x, _p=float(p): _lp_loss_grad(x, _p), budget, "lp", float(p))
        budget -= used
    if budget > 0:
        f, _ = run.phase(f, _linf_loss_grad, budget, "linf", math.inf, stop="budget")
    return run.finish(complex, f)


def linf_coordinate_softmax(
    complex: RipsComplex, alpha, cfg: LpConfig | None = None
) -> tuple[np.ndarray, Cochain1, LossTrace]:
    """Max-norm minimization through the softmax surrogate.

    Optimizes sum_e softmax(t|abar|)_e |abar_e| to tau-convergence, raises the
    temperature by one, and repeats until the epoch budget is spent.  Returns
    the last iterate: earlier iterates were scored by colder surrogates and
    their losses are not comparable.
    """
    cfg = cfg or LpConfig()
    a = _alpha_values(complex, alpha)
    run = _Run(complex, a, cfg, track=None)
    f = _initial_f(complex, a, cfg.init)
    t = float(cfg.temperature_start)
    budget = cfg.max_epochs
    while budget > 0:
        f, used = run.phase(f, lambda x, _t=t: _softmax_loss_grad(x, _t), budget, "softmax", t)
        budget -= used
        t += 1.0
    return run.finish(complex, f)
