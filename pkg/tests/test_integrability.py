import numpy as np
import pytest

from cotkahler import integrability as ig
from cotkahler import lifts as lf
from cotkahler.exceptions import DomainError
from cotkahler.profiles import custom_profile, make_case_profile, with_b1_offset, with_mu_offset
from cotkahler.spaceform import SpaceForm
from conftest import random_point

B1_OFFSETS = ["0.1", "-0.1", "0.3*t", "0.05*(1+t)", "0.2*t**2+0.05"]


def test_brackets_flat():
    M = SpaceForm(3, 0.0)
    r = ig.bracket_check(M, lf.cotangent_point(M, [0.3, -0.2, 0.1], [1.0, 0.5, -2.0]))
    assert r.max < 1e-8


def test_brackets_sphere(rng):
    M = SpaceForm(3, 1.0)
    for _ in range(10):
        r = ig.bracket_check(M, random_point(M, rng))
        assert r.hh < 1e-6
        assert r.vh < 1e-6
        assert r.vv < 1e-10


def test_bracket_margin_violation():
    M = SpaceForm(2, -1.0)
    with pytest.raises(DomainError):
        ig.bracket_check(M, lf.cotangent_point(M, [0.9999, 0.0], [1.0, 0.0]))


def test_closed_form_flat(flat):
    M = SpaceForm(2, 0.0)
    blk = ig.nijenhuis_delta_delta_closed(M, flat, lf.cotangent_point(M, [0.2, 0.1], [1.0, 2.0]))
    assert blk.coeff == 0 and np.abs(blk.components).max() == 0


def violating_profile():
    return custom_profile(1, 1, c=0.0, b1=1)


def test_closed_form_violating_profile():
    M = SpaceForm(2, 0.0)
    pt = lf.cotangent_point(M, [0.0, 0.0], [1.0, 0.0])
    blk = ig.nijenhuis_delta_delta_closed(M, violating_profile(), pt)
    assert blk.coeff == -1
    assert blk.components[1, 0, 1] == -1
    assert np.array_equal(blk.components, -np.swapaxes(blk.components, 1, 2))


def test_numeric_matches_closed_form_violating_profile():
    M = SpaceForm(2, 0.0)
    P = violating_profile()
    pt = lf.cotangent_point(M, [0.0, 0.0], [1.0, 0.0])
    N = ig.nijenhuis_numeric(M, P, pt, ("h", 0), ("h", 1))
    closed = ig.nijenhuis_delta_delta_closed(M, P, pt).components[:, 0, 1]
    assert np.abs(N[:2]).max() < 1e-6
    assert np.abs(N[2:] - closed).max() < 1e-6


def test_closed_form_case1_vanishes(case1, rng):
    M = SpaceForm(3, 1.0)
    for _ in range(20):
        blk = ig.nijenhuis_delta_delta_closed(M, case1, random_point(M, rng, t_max=5))
        assert np.abs(blk.components).max() < 1e-12


def test_numeric_case1_all_pairs(case1, rng):
    M = SpaceForm(3, 1.0)
    for _ in range(50):
        pt = random_point(M, rng, t_max=5)
        N = ig.nijenhuis_full(M, case1, pt)
        assert np.abs(N).max() < 1e-6
        assert np.abs(N + np.swapaxes(N, 0, 1)).max() < 1e-8
    assert np.abs(ig.nijenhuis_numeric(M, case1, pt, ("v", 0), ("h", 1))).max() < 1e-6


@pytest.mark.parametrize("offset", B1_OFFSETS)
def test_perturbed_b1_detected(case1, offset):
    M = SpaceForm(3, 1.0)
    P = with_b1_offset(case1, offset)
    pt = lf.cotangent_point(M, [0.2, -0.1, 0.3], [0.7, 0.4, -0.5])
    N = ig.nijenhuis_full(M, P, pt)
    assert np.abs(N).max() > 1e-3
    closed = ig.nijenhuis_delta_delta_closed(M, P, pt).components
    assert np.abs(N[:3, :3, 3:] - np.einsum("kij->ijk", closed)).max() < 1e-6
    # the horizontal part of N(delta_i, delta_j) vanishes even off the integrable locus
    assert np.abs(N[:3, :3, :3]).max() < 1e-6


@pytest.mark.parametrize("make", [
    lambda: make_case_profile("case1", c=1, B=1, k=2),
    lambda: make_case_profile("case2", c=1, B=1, k=2),
    lambda: make_case_profile("case3", c=1, k=1),
    lambda: custom_profile("B+sqrt(B**2+2*c*t)", "exp(t/5)", c=1.0, B=1.0),
    lambda: custom_profile(1, 1, c=0.0),
])
def test_conforming_profiles_integrable_and_closed(make, rng):
    P = make()
    M = SpaceForm(3, P.c)
    for _ in range(5):
        pt = random_point(M, rng, t_min=0.1, t_max=1.5)
        assert np.abs(ig.nijenhuis_full(M, P, pt)).max() < 1e-6
        assert np.abs(ig.dphi_full(M, P, pt)).max() < 1e-6


def test_mu_offset_detected_and_linear(case1):
    M = SpaceForm(3, 1.0)
    pt = lf.cotangent_point(M, [0, 0, 0], [1.0, 0.0, 0.0])
    triple = (("v", 0), ("v", 1), ("h", 1))
    vals = [ig.dphi_numeric(M, with_mu_offset(case1, off), pt, *triple) for off in (1, 2)]
    assert abs(vals[0]) > 1e-3
    assert abs(vals[1] / vals[0] - 2.0) < 1e-4
    assert abs(ig.dphi_numeric(M, case1, pt, *triple)) < 1e-6


def test_dphi_antisymmetric(case1):
    M = SpaceForm(3, 1.0)
    P = with_mu_offset(case1, 1)
    D = ig.dphi_full(M, P, lf.cotangent_point(M, [0.1, 0.2, -0.1], [0.5, -0.4, 0.8]))
    assert np.abs(D + np.einsum("bac->abc", D)).max() < 1e-8
    assert np.abs(D + np.einsum("acb->abc", D)).max() < 1e-8
    assert np.abs(D + np.einsum("cba->abc", D)).max() < 1e-8


def test_kahler_requires_both_conditions(case1):
    # each relation is detected independently; only the conforming profile passes both
    M = SpaceForm(3, 1.0)
    pt = lf.cotangent_point(M, [0.2, -0.1, 0.3], [0.7, 0.4, -0.5])
    out = {}
    for key, P in {"ok": case1, "b1": with_b1_offset(case1, "0.1"),
                   "mu": with_mu_offset(case1, "0.5")}.items():
        out[key] = (np.abs(ig.nijenhuis_full(M, P, pt)).max() < 1e-6,
                    np.abs(ig.dphi_full(M, P, pt)).max() < 1e-6)
    assert out == {"ok": (True, True), "b1": (False, True), "mu": (True, False)}
