import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cotkahler.exceptions import DomainError
from cotkahler.spaceform import (SpaceForm, base_geometry_at, base_geometry_fd_oracle,
                                 constant_curvature_tensor, covariant_derivative_of_metric)


def test_flat_chart_is_euclidean():
    G = base_geometry_at(SpaceForm(2, 0.0), np.array([0.7, -1.3]))
    assert np.array_equal(G.g, np.eye(2))
    assert np.abs(G.gamma).max() == 0
    assert np.abs(G.riemann).max() == 0


def test_sphere_at_origin():
    G = base_geometry_at(SpaceForm(2, 1.0), np.zeros(2))
    assert np.allclose(G.g, np.eye(2))
    assert np.abs(G.gamma).max() == 0
    # R^1_{212} in 1-based indices
    assert G.riemann[0, 1, 0, 1] == pytest.approx(1.0)


def test_conformal_factor_at_radius_two():
    G = base_geometry_at(SpaceForm(2, 1.0), np.array([2.0, 0.0]))
    assert np.allclose(G.g, 0.25 * np.eye(2))
    assert np.allclose(G.g_inv, 4 * np.eye(2))


def test_dimension_one_rejected():
    with pytest.raises(ValueError):
        SpaceForm(1, 1.0)


def test_hyperbolic_chart_radius_bound():
    with pytest.raises(ValueError):
        SpaceForm(2, -1.0, chart_radius=2.5)


def test_out_of_chart_point_reports_norm():
    M = SpaceForm(2, -1.0)
    with pytest.raises(DomainError, match=r"\|x\| = 1.414"):
        base_geometry_at(M, np.array([1.0, 1.0]))


def test_fd_oracle_flat():
    G = base_geometry_fd_oracle(SpaceForm(2, 0.0), np.array([0.3, -0.1]))
    assert np.abs(G.gamma).max() < 1e-10


def test_fd_oracle_sphere_n3():
    M = SpaceForm(3, 1.0)
    x = np.array([0.2, 0.0, 0.0])
    assert np.abs(base_geometry_fd_oracle(M, x).gamma - base_geometry_at(M, x).gamma).max() < 1e-6


def test_fd_oracle_hyperbolic_curvature():
    M = SpaceForm(2, -1.0)
    x = np.array([0.5, 0.5])
    G = base_geometry_fd_oracle(M, x)
    assert np.abs(G.riemann - constant_curvature_tensor(-1.0, G.g)).max() < 1e-6


def test_fd_oracle_rejects_boundary():
    M = SpaceForm(2, -1.0)
    with pytest.raises(DomainError):
        base_geometry_fd_oracle(M, np.array([0.99999, 0.0]))


@pytest.mark.parametrize("c", [-1.0, 0.0, 1.0])
@pytest.mark.parametrize("n", [2, 3, 5])
def test_closed_form_matches_oracle(n, c):
    M = SpaceForm(n, c)
    rng = np.random.default_rng(n * 10 + int(c) + 1)
    for _ in range(100):
        x = rng.normal(size=n)
        x *= 0.5 * M.chart_radius * rng.uniform() / np.linalg.norm(x)
        exact = base_geometry_at(M, x)
        fd = base_geometry_fd_oracle(M, x)
        scale = max(1.0, np.abs(exact.gamma).max())
        assert np.abs(fd.gamma - exact.gamma).max() / scale < 1e-6


coords = st.lists(st.floats(-1.0, 1.0), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(coords, st.sampled_from([-1.0, 0.0, 1.0]))
def test_geometry_invariants(x, c):
    M = SpaceForm(3, c)
    x = np.array(x) * 0.9 * M.chart_radius / np.sqrt(3)
    G = base_geometry_at(M, x)
    assert np.abs(G.g @ G.g_inv - np.eye(3)).max() < 1e-12
    assert np.all(np.linalg.eigvalsh(G.g) > 0)
    assert np.array_equal(G.gamma, np.swapaxes(G.gamma, 1, 2))
    assert np.array_equal(G.riemann, -np.swapaxes(G.riemann, 2, 3))
    assert np.abs(G.riemann - constant_curvature_tensor(c, G.g)).max() < 1e-9
    assert np.abs(covariant_derivative_of_metric(G)).max() < 1e-8
