import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cotkahler import lifts as lf
from cotkahler.exceptions import DomainError
from cotkahler.spaceform import SpaceForm, base_geometry_at
from conftest import random_point


def test_energy_density_examples():
    M = SpaceForm(2, 1.0)
    assert lf.energy_density(M, [0.0, 0.0], [3.0, 4.0]) == 12.5
    assert lf.energy_density(M, [2.0, 0.0], [1.0, 0.0]) == pytest.approx(2.0)
    assert lf.energy_density(M, [0.4, -0.2], [0.0, 0.0]) == 0.0
    pt = lf.cotangent_point(M, [0.0, 0.0], [3.0, 4.0])
    assert pt.t == lf.energy_density(M, pt) == 12.5


def test_energy_density_out_of_chart():
    with pytest.raises(DomainError):
        lf.energy_density(SpaceForm(2, -1.0), [3.0, 0.0], [1.0, 0.0])


def test_flat_identity_blocks(flat):
    M = SpaceForm(2, 0.0)
    B = lf.structure_blocks_at(M, flat, lf.cotangent_point(M, [0, 0], [1, 0]))
    for name in ("J1", "J2", "G1", "G2", "H1", "H2", "phi"):
        assert np.allclose(getattr(B, name), np.eye(2)), name


def test_phi_on_zero_section(case1):
    M = SpaceForm(2, 1.0)
    B = lf.structure_blocks_at(M, case1, lf.cotangent_point(M, [0, 0], [0, 0]))
    assert np.allclose(B.phi, np.eye(2))


def test_apply_J_on_basis(flat):
    M = SpaceForm(2, 0.0)
    B = lf.structure_blocks_at(M, flat, lf.cotangent_point(M, [0, 0], [1, 0]))
    JX = lf.apply_J(B, lf.AdaptedVector([1, 0], [0, 0]))
    assert np.array_equal(JX.h, [0, 0]) and np.array_equal(JX.v, [1, 0])
    JY = lf.apply_J(B, lf.AdaptedVector([0, 0], [1, 0]))
    assert np.array_equal(JY.h, [-1, 0]) and np.array_equal(JY.v, [0, 0])


def test_dimension_mismatch(flat):
    M = SpaceForm(2, 0.0)
    B = lf.structure_blocks_at(M, flat, lf.cotangent_point(M, [0, 0], [1, 0]))
    with pytest.raises(ValueError, match="dimension mismatch"):
        lf.apply_J(B, lf.AdaptedVector([1, 0, 0], [0, 0, 0]))
    with pytest.raises(ValueError):
        lf.inner_product(B, lf.AdaptedVector([1, 0], [0, 0]), lf.AdaptedVector([1], [0]))


def test_mixed_pair_orthogonal(flat):
    M = SpaceForm(2, 0.0)
    B = lf.structure_blocks_at(M, flat, lf.cotangent_point(M, [0, 0], [1, 0]))
    assert lf.inner_product(B, lf.basis_vector("h", 0, 2), lf.basis_vector("v", 0, 2)) == 0


def test_phi_values_case1_zero_section(case1):
    M = SpaceForm(3, 1.0)
    B = lf.structure_blocks_at(M, case1, lf.cotangent_point(M, [0.1, 0, 0], [0, 0, 0]))
    for i in range(3):
        for j in range(3):
            val = lf.phi_value(B, lf.basis_vector("v", i, 3), lf.basis_vector("h", j, 3))
            assert val == pytest.approx(float(i == j), abs=1e-14)
            assert lf.phi_value(B, lf.basis_vector("h", i, 3), lf.basis_vector("h", j, 3)) == 0


def test_frame_flat_is_identity():
    M = SpaceForm(3, 0.0)
    F = lf.adapted_frame_in_chart(M, lf.cotangent_point(M, [0.3, 0.1, 0.2], [1, 2, 3]))
    assert np.array_equal(F, np.eye(6))


def test_frame_vertical_block_is_gamma0():
    M = SpaceForm(2, 1.0)
    pt = lf.cotangent_point(M, [0.4, -0.3], [0.5, 1.2])
    F = lf.adapted_frame_in_chart(M, pt)
    gamma = base_geometry_at(M, pt.q).gamma
    # column i (delta_i), row n + h holds Gamma^0_{ih} = p_k Gamma^k_{ih}
    for i in range(2):
        for h in range(2):
            assert F[2 + h, i] == pytest.approx(pt.p @ gamma[:, i, h])
    assert np.array_equal(F[:2, :2], np.eye(2)) and np.array_equal(F[2:, 2:], np.eye(2))


def test_frame_invertible(rng):
    M = SpaceForm(3, -1.0)
    for _ in range(100):
        assert abs(np.linalg.det(lf.adapted_frame_in_chart(M, random_point(M, rng)))) > 0.5


@pytest.mark.parametrize("name", ["case1", "case2", "case3", "flat"])
def test_operator_identities(name, request, rng):
    P = request.getfixturevalue(name)
    M = SpaceForm(3, P.c)
    t_min = 0.1 if name == "case3" else 0.0
    t_max = 1.5 if name == "case3" else 5.0
    for _ in range(100):
        pt = random_point(M, rng, t_min=t_min, t_max=t_max)
        B = lf.structure_blocks_at(M, P, pt)
        assert np.abs(B.G1 @ B.H1 - np.eye(3)).max() < 1e-10
        assert np.abs(B.G2 @ B.H2 - np.eye(3)).max() < 1e-10
        assert np.linalg.eigvalsh(B.G1).min() > 0 and np.linalg.eigvalsh(B.G2).min() > 0
        X = lf.AdaptedVector.from_array(rng.normal(size=6))
        Y = lf.AdaptedVector.from_array(rng.normal(size=6))
        assert np.abs((lf.apply_J(B, lf.apply_J(B, X)) + X).as_array()).max() < 1e-12
        assert abs(lf.inner_product(B, lf.apply_J(B, X), lf.apply_J(B, Y))
                   - lf.inner_product(B, X, Y)) < 1e-12
        assert lf.inner_product(B, X, X) > 0
        assert abs(lf.phi_value(B, X, Y) + lf.phi_value(B, Y, X)) < 1e-12
        assert np.abs(B.G_matrix @ B.J_matrix - B.phi_matrix).max() < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1.0, 1.0), min_size=4, max_size=4),
       st.lists(st.floats(-3.0, 3.0), min_size=2, max_size=2))
def test_energy_density_matches_metric(qp, p):
    M = SpaceForm(2, -0.5)
    q = np.array(qp[:2])
    pt = lf.cotangent_point(M, q, p)
    g_inv = base_geometry_at(M, q).g_inv
    assert abs(pt.t - 0.5 * np.array(p) @ g_inv @ np.array(p)) < 1e-12 * max(1.0, pt.t)
    assert pt.t >= 0
