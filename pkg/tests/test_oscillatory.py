import cmath
import math

import numpy as np
import pytest

from simplicial_measure.oscillatory import (
    ProbeFunction,
    ToyTrajectory,
    constant_mass,
    fresnel_1d,
    fresnel_nd,
    fresnel_nd_quadrature,
    fresnel_prefactor,
    glue_consistency_check,
    toy_jump_split,
)
from simplicial_measure.supermetric import SMOOTHSTEP, dewitt_supermetric

EPS = 1e-3


def test_1d_closed_form_ratio():
    for eps in (1e-2, 1e-3, 0.3):
        r = fresnel_1d(eps)
        assert r.value / r.predicted == pytest.approx((1 + 1j * eps) ** -0.5, rel=1e-12)
        assert r.value == pytest.approx(cmath.sqrt(math.pi / (1 - 1j / eps)), rel=1e-14)


def test_1d_within_one_percent():
    assert fresnel_1d(EPS).rel_error <= 0.01


@pytest.mark.parametrize("probe", [ProbeFunction(), ProbeFunction(0.4, 0.7, 2.0), ProbeFunction(3.0, 0.5)])
@pytest.mark.parametrize("eps", [1e-2, 1e-3])
def test_1d_quadrature_cross_check(probe, eps):
    exact = fresnel_1d(eps, probe).value
    quad = fresnel_1d(eps, probe, method="quadrature").value
    assert abs(quad - exact) <= 1e-8 * abs(exact)


def test_1d_localizes_off_center_probe():
    probe = ProbeFunction(3.0, 0.5)
    r = fresnel_1d(EPS, probe)
    assert abs(r.predicted) == pytest.approx(math.sqrt(math.pi * EPS) * math.exp(-36), rel=1e-12)
    # both are tiny compared with a centred probe
    assert abs(r.value) < 1e-12 * abs(fresnel_1d(EPS).value)


def test_1d_error_order():
    eps = np.array([1e-2, 1e-3, 1e-4])
    err = np.array([fresnel_1d(e).rel_error for e in eps])
    slope = np.polyfit(np.log(eps), np.log(err), 1)[0]
    assert slope >= 0.9


def test_1d_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        fresnel_1d(0.0)


@pytest.mark.parametrize("M,phase", [
    ([[1.0]], math.pi / 4),
    ([[1.0, 0.0], [0.0, -1.0]], 0.0),
    ([[1.0, 0.0], [0.0, 1.0]], math.pi / 2),
])
def test_nd_prefactor_examples(M, phase):
    n = len(M)
    pre = fresnel_prefactor(M, EPS)
    assert abs(pre) == pytest.approx((2 * math.pi * EPS) ** (n / 2), rel=1e-12)
    assert cmath.phase(pre) == pytest.approx(phase, abs=1e-12)
    r = fresnel_nd(M, EPS)
    assert abs(r.magnitude_ratio - 1) <= 0.02
    assert r.phase_error <= 0.05


@pytest.mark.parametrize("M", [
    [[1.0]],
    [[1.0, 0.0], [0.0, -1.0]],
    [[2.0, 0.4], [0.4, -0.5]],
    [[1.5, 0.2, -0.3], [0.2, -1.0, 0.1], [-0.3, 0.1, 0.8]],
])
def test_nd_quadrature_matches_closed_form(M):
    probes = [ProbeFunction(0.1 * k, 1.0 + 0.2 * k) for k in range(len(M))]
    for eps in (1e-2, 1e-3):
        exact = fresnel_nd(M, eps, probes).value
        quad = fresnel_nd_quadrature(M, eps, probes)
        assert abs(quad - exact) <= 1e-9 * abs(exact)


def test_nd_indefinite_agrees_within_tolerance():
    M = [[1.5, 0.2, -0.3], [0.2, -1.0, 0.1], [-0.3, 0.1, 0.8]]
    r = fresnel_nd(M, EPS)
    assert abs(r.magnitude_ratio - 1) <= 0.02 and r.phase_error <= 0.05


def test_nd_quadrature_dimension_limit():
    with pytest.raises(ValueError):
        fresnel_nd_quadrature(np.eye(4), EPS, ProbeFunction())


def test_supermetric_prefactor_via_general_formula():
    # exp(i/eps v.M.v) is the N=6 case with matrix 2M
    eps = 1e-3
    pre = fresnel_prefactor(2 * dewitt_supermetric(np.eye(3)), eps)
    assert abs(pre) == pytest.approx(2 * (math.pi * eps) ** 3, rel=1e-10)


def test_toy_split_example():
    traj = ToyTrajectory([0.0], [1.0], constant_mass([[1.0]]))
    s_sing, _ = toy_jump_split(traj, 0.1)
    assert s_sing == pytest.approx(5.0, rel=1e-14)


def test_toy_split_no_jump():
    traj = ToyTrajectory([0.4], [0.4], constant_mass([[2.0]]), start=[0.0], end=[1.0])
    assert toy_jump_split(traj, 0.1)[0] == 0.0


def test_toy_split_scaling():
    M = [[2.0, 0.3], [0.3, 1.0]]
    traj = ToyTrajectory([0.0, 1.0], [1.0, -0.5], constant_mass(M), start=[-1.0, 0.0], end=[2.0, 0.0],
                         profile=SMOOTHSTEP)
    s1, i1 = toy_jump_split(traj, 1e-2)
    s2, i2 = toy_jump_split(traj, 5e-3)
    assert s2 == pytest.approx(2 * s1, rel=1e-12)
    assert 1e-2 * s1 == pytest.approx(5e-3 * s2, rel=1e-10)
    assert i2 == pytest.approx(i1, rel=1e-2)


def test_toy_split_position_dependent_mass():
    # M(x) = 1 + x^2 along a linear jump 0 -> 1: kernel = int (1 + (t+1/2)^2) dt = 4/3
    traj = ToyTrajectory([0.0], [1.0], lambda x: np.array([[1.0 + x[0] ** 2]]))
    s_sing, s_ind = toy_jump_split(traj, 0.1)
    assert s_sing == pytest.approx(0.5 * (4 / 3) / 0.1, rel=1e-12)
    assert s_ind == 0.0


def test_glue_constant_mass_is_one():
    assert glue_consistency_check(constant_mass(np.diag([2.0, 3.0])), [0.1, 0.2]) == pytest.approx(1.0, abs=1e-14)


def test_glue_position_dependent():
    v = glue_consistency_check(lambda x: np.array([[1 + 0.1 * x[0] ** 2]]), [0.5], width=1e-3)
    assert abs(v - 1) <= 1e-5
    v = glue_consistency_check(lambda x: np.diag([1 + 0.1 * np.sin(x[0]), 2 + x[1] ** 2]), [0.3, -0.6], width=1e-3)
    assert abs(v - 1) <= 1e-5


def test_glue_wide_regulator_deviates():
    # the check measures something: a wide regulator sees the variation of det M
    v = glue_consistency_check(lambda x: np.array([[1 + x[0] ** 2]]), [0.0], width=0.5)
    assert abs(v - 1) > 1e-3
