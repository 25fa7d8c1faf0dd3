"""Gradient-descent coordinate optimizers and their norm objectives."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from circoords import (
    ConvergenceError,
    LpConfig,
    PointCloud,
    build_rips,
    harmonic_solve,
    linf_coordinate_direct,
    linf_coordinate_schedule,
    linf_coordinate_softmax,
    lp_coordinate,
    lp_norm,
    persistence_diagram,
    restrict_and_lift,
    select_epsilon,
    softmax_objective,
)

SQUARE = PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


@pytest.fixture(scope="module")
def square_problem():
    pair = persistence_diagram(SQUARE, threshold=2.0)[0]
    cpx = build_rips(SQUARE, select_epsilon(pair))
    return cpx, restrict_and_lift(pair, cpx)


def oriented_loop_sum(cpx, values, loop):
    total = 0.0
    for a, b in zip(loop[:-1], loop[1:]):
        e = int(cpx.edge_ids(np.array([[a, b]]))[0])
        total += values[e] if a < b else -values[e]
    return total


def test_lp_norm_matches_reference():
    x = np.array([3.0, -4.0])
    assert lp_norm(x, 2.0) == pytest.approx(5.0)
    assert lp_norm(x, 1.0) == pytest.approx(7.0)
    assert lp_norm(x, math.inf) == 4.0
    assert lp_norm(np.zeros(3), 7.0) == 0.0
    rng = np.random.default_rng(0)
    v = rng.normal(size=20)
    for p in (1.5, 3.0, 8.0):
        assert lp_norm(v, p) == pytest.approx(np.linalg.norm(v, p))


@settings(max_examples=100, deadline=None)
@given(
    arrays(np.float64, st.integers(1, 30), elements=st.floats(-1e6, 1e6)),
    st.sampled_from([10.0, 50.0]),
)
def test_lp_norm_sup_sandwich(x, p):
    sup = float(np.abs(x).max())
    val = lp_norm(x, p)
    assert sup <= val <= len(x) ** (1.0 / p) * sup


def test_softmax_objective_hand_values():
    v = np.array([3.0, 0.0])
    assert softmax_objective(v, 1.0) == pytest.approx(3.0 / (1.0 + math.exp(-3.0)))
    assert softmax_objective(v, 1000.0) == pytest.approx(3.0, abs=1e-12)
    # uniform weights at t=0 give the mean of |x|
    assert softmax_objective(np.array([1.0, -3.0]), 1e-12) == pytest.approx(2.0)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.integers(1, 20), elements=st.floats(-100, 100)), st.floats(0.1, 5.0))
def test_softmax_objective_below_max(x, t):
    assert softmax_objective(x, t) <= float(np.abs(x).max()) + 1e-9


@pytest.mark.parametrize("p", [2.0, 7.0, 20.0])
def test_lp_square_flattens_to_quarter(square_problem, p):
    cpx, alpha = square_problem
    f, abar, trace = lp_coordinate(cpx, alpha, LpConfig(p=p))
    np.testing.assert_allclose(np.abs(abar.values), 0.25, atol=1e-6)
    assert min(trace.losses) == pytest.approx(0.25 * 4.0 ** (1.0 / p), abs=1e-6)
    assert f[0] == 0.0  # gauge fixed


def test_lp_warm_start_is_exact_on_square(square_problem):
    cpx, alpha = square_problem
    f, _, _ = lp_coordinate(cpx, alpha, LpConfig(p=2.0))
    g, _ = harmonic_solve(cpx, alpha)
    np.testing.assert_allclose(f, g, atol=1e-10)


def test_lp_cold_start_reaches_harmonic_loss():
    rng = np.random.default_rng(3)
    cloud = PointCloud(rng.normal(size=(20, 2)))
    cpx = build_rips(cloud, 1.2)
    a = rng.integers(-1, 2, size=cpx.n_edges).astype(float)
    _, abar_opt, _ = lp_coordinate(cpx, a, LpConfig(p=2.0, init="zeros", eta=0.05, tau=1e-8))
    _, abar_ref = harmonic_solve(cpx, a)
    assert lp_norm(abar_opt.values, 2.0) <= 1.01 * lp_norm(abar_ref.values, 2.0)


def test_coboundary_input_optimizes_to_zero(square_problem):
    cpx, _ = square_problem
    rng = np.random.default_rng(1)
    g = rng.normal(size=cpx.n_vertices)
    d0g = g[cpx.edges[:, 1]] - g[cpx.edges[:, 0]]
    _, abar, trace = lp_coordinate(cpx, d0g, LpConfig(p=4.0))
    assert min(trace.losses) <= 1e-8
    np.testing.assert_allclose(abar.values, 0.0, atol=1e-8)


def test_direct_linf_square_reaches_quarter(square_problem):
    cpx, alpha = square_problem
    f, abar, trace = linf_coordinate_direct(cpx, alpha, LpConfig(p=math.inf, max_epochs=200))
    assert min(trace.losses) == pytest.approx(0.25, abs=1e-9)
    np.testing.assert_allclose(np.abs(abar.values), 0.25, atol=1e-9)
    # budget-bound subgradient phase: the full allowance is spent
    assert len(trace) == 200
    assert set(trace.norm_kinds) == {"linf"}
    assert np.all(np.isinf(trace.p_or_t))


def test_schedule_runs_p_segments_then_max_norm(square_problem):
    cpx, alpha = square_problem
    f, abar, trace = linf_coordinate_schedule(
        cpx, alpha, LpConfig(schedule=(2, 4), max_epochs=50)
    )
    assert len(trace) == 50
    np.testing.assert_array_equal(trace.iterations, np.arange(50))
    kinds = np.asarray(trace.norm_kinds)
    switch = int(np.argmax(kinds == "linf"))
    assert switch > 0 and np.all(kinds[switch:] == "linf")
    # p labels rise monotonically through the smooth segments
    p_labels = trace.p_or_t[:switch]
    assert np.all(np.diff(p_labels) >= 0)
    assert p_labels[0] == 2.0 and p_labels[-1] == 4.0
    assert min(trace.sup_norms) == pytest.approx(0.25, abs=1e-9)


def test_schedule_requires_schedule(square_problem):
    cpx, alpha = square_problem
    with pytest.raises(ValueError):
        linf_coordinate_schedule(cpx, alpha, LpConfig())


def test_schedule_segments_descend_within_tau():
    rng = np.random.default_rng(9)
    cloud = PointCloud(rng.normal(size=(25, 2)))
    pairs = persistence_diagram(cloud)
    if not pairs:
        pytest.skip("no class at this scale")
    cpx = build_rips(cloud, select_epsilon(pairs[0]))
    alpha = restrict_and_lift(pairs[0], cpx)
    cfg = LpConfig(schedule=(2, 6), max_epochs=4000)
    _, _, trace = linf_coordinate_schedule(cpx, alpha, cfg)
    kinds = np.asarray(trace.norm_kinds)
    for p in np.unique(trace.p_or_t[kinds == "lp"]):
        seg = trace.losses[(kinds == "lp") & (trace.p_or_t == p)]
        assert np.all(np.diff(seg) <= cfg.tau)


def test_softmax_square_stays_at_optimum(square_problem):
    cpx, alpha = square_problem
    f, abar, trace = linf_coordinate_softmax(cpx, alpha, LpConfig(max_epochs=10))
    np.testing.assert_allclose(np.abs(abar.values), 0.25, atol=1e-9)
    # the warm start is already optimal for every temperature: each stage
    # evaluates twice and tau-stops, then the temperature climbs by one
    assert len(trace) == 10
    np.testing.assert_array_equal(trace.p_or_t, np.repeat([1.0, 2.0, 3.0, 4.0, 5.0], 2))
    assert set(trace.norm_kinds) == {"softmax"}


def test_all_optimizers_preserve_the_class(square_problem):
    cpx, alpha = square_problem
    loop = [0, 1, 2, 3, 0]
    want = oriented_loop_sum(cpx, alpha.values.astype(float), loop)
    assert want == 1.0
    runs = [
        lp_coordinate(cpx, alpha, LpConfig(p=3.0)),
        linf_coordinate_direct(cpx, alpha, LpConfig(p=math.inf, max_epochs=100)),
        linf_coordinate_schedule(cpx, alpha, LpConfig(schedule=(2, 3), max_epochs=100)),
        linf_coordinate_softmax(cpx, alpha, LpConfig(max_epochs=100)),
    ]
    for _, abar, _ in runs:
        assert oriented_loop_sum(cpx, abar.values, loop) == pytest.approx(1.0, abs=1e-9)


def test_divergence_reports_iteration(square_problem):
    # the edge gradients are bounded, so a non-finite loss can only come
    # from data at overflow scale
    cpx, _ = square_problem
    alpha = np.full(cpx.n_edges, 1.7e308)
    with pytest.raises(ConvergenceError, match="iteration"):
        lp_coordinate(cpx, alpha, LpConfig(p=4.0, init="zeros"))


def test_lp_rejects_infinite_p(square_problem):
    cpx, alpha = square_problem
    with pytest.raises(ValueError):
        lp_coordinate(cpx, alpha, LpConfig(p=math.inf))


def test_alpha_length_checked(square_problem):
    cpx, _ = square_problem
    with pytest.raises(ValueError):
        lp_coordinate(cpx, np.ones(cpx.n_edges + 1), LpConfig(p=2.0))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"eta": 0.0},
        {"tau": 0.0},
        {"max_epochs": 0},
        {"p": 0.5},
        {"p": 20_000.0},
        {"schedule": (1, 5)},
        {"schedule": (5, 3)},
        {"schedule": (2, 20_000)},
        {"temperature_start": 0.0},
        {"init": "random"},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        LpConfig(**kwargs)


def test_infinite_p_config_is_valid():
    assert math.isinf(LpConfig(p=math.inf).p)
