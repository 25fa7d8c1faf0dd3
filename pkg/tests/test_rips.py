"""Rips 2-skeleton construction and coboundary operators."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circoords import PointCloud, build_rips, pairwise_distances
from circoords.rips import coboundary0, coboundary1

EQUILATERAL = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])


def random_cloud(seed, n=None, dim=2):
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(3, 15))
    return PointCloud(rng.normal(size=(n, dim)))


def test_equilateral_triangle_is_filled_at_scale_one():
    cpx = build_rips(PointCloud(EQUILATERAL), 1.0)
    assert cpx.n_edges == 3
    assert cpx.n_triangles == 1
    assert cpx.triangles.tolist() == [[0, 1, 2]]
    np.testing.assert_allclose(cpx.edge_lengths, 1.0)
    np.testing.assert_allclose(cpx.triangle_values, 1.0)


def test_below_scale_no_simplices():
    cpx = build_rips(PointCloud(EQUILATERAL), 0.5)
    assert cpx.n_edges == 0 and cpx.n_triangles == 0
    labels, reps = cpx.components()
    assert labels.tolist() == [0, 1, 2]
    assert reps.tolist() == [0, 1, 2]


def test_edges_sorted_by_length_then_index():
    cpx = build_rips(random_cloud(0, n=20), 2.0)
    keys = list(zip(cpx.edge_lengths, cpx.edges[:, 0], cpx.edges[:, 1]))
    assert keys == sorted(keys)
    assert np.all(cpx.edges[:, 0] < cpx.edges[:, 1])


def test_triangle_value_is_max_edge_length():
    cloud = random_cloud(1, n=15)
    d = pairwise_distances(cloud)
    cpx = build_rips(cloud, 1.5, distances=d)
    for (i, j, k), v in zip(cpx.triangles, cpx.triangle_values):
        assert v == max(d[i, j], d[i, k], d[j, k])
        assert v <= 1.5


def test_skeleton_one_skips_triangles():
    cloud = random_cloud(2, n=12)
    full = build_rips(cloud, 2.0)
    flat = build_rips(cloud, 2.0, skeleton=1)
    assert flat.n_triangles == 0
    assert np.array_equal(flat.edges, full.edges)


def test_edge_ids_both_orientations_and_missing():
    cpx = build_rips(PointCloud(EQUILATERAL), 1.0)
    ids = cpx.edge_ids(np.array([[1, 0], [0, 1], [2, 0], [1, 2]]))
    assert ids[0] == ids[1] >= 0
    assert set(ids.tolist()) == {0, 1, 2}
    assert cpx.edge_ids(np.array([[0, 0]])).tolist() == [-1]
    assert cpx.has_edge(0, 2) and not cpx.has_edge(0, 0)
    assert cpx.edge_ids(np.zeros((0, 2))).shape == (0,)


def test_vertex_degrees_and_components():
    # two segments far apart: 0-1 and 2-3
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [10.0, 0.0], [11.0, 0.0]])
    cpx = build_rips(PointCloud(pts), 1.5)
    assert cpx.vertex_degrees().tolist() == [1, 1, 1, 1]
    labels, reps = cpx.components()
    assert labels.tolist() == [0, 0, 1, 1]
    assert reps.tolist() == [0, 2]


def test_negative_epsilon_rejected():
    with pytest.raises(ValueError):
        build_rips(PointCloud(EQUILATERAL), -0.1)


def test_coboundary_shapes_and_signs():
    cpx = build_rips(PointCloud(EQUILATERAL), 1.0)
    d0 = coboundary0(cpx).toarray()
    d1 = coboundary1(cpx).toarray()
    assert d0.shape == (3, 3) and d1.shape == (1, 3)
    for k, (i, j) in enumerate(cpx.edges):
        assert d0[k, i] == -1 and d0[k, j] == 1
    # one filled triangle: alternating signs over its boundary edges
    assert sorted(d1[0].tolist()) == [-1, 1, 1]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.2, 2.5))
def test_d1_after_d0_is_zero(seed, eps):
    cpx = build_rips(random_cloud(seed), eps)
    d0, d1 = coboundary0(cpx), coboundary1(cpx)
    assert (d1 @ d0).nnz == 0
    f = np.random.default_rng(seed).normal(size=cpx.n_vertices)
    if cpx.n_triangles:
        np.testing.assert_allclose(d1 @ (d0 @ f), 0.0, atol=1e-12)
