import math

import numpy as np
import pytest

from casimir import planar_kernels
from casimir.errors import DomainError
from casimir.planar_kernels import (
    chi,
    fresnel,
    kappa,
    mode_sum,
    reflection,
    static_permittivity_ratio,
    static_reflection,
    tail_reflection,
)
from materials.constants import CONSTANTS
from materials.permittivity import (
    SINGULARITY_ORDER,
    ConstantPermittivity,
    DrudePermittivity,
    IdealMetal,
    PlasmaPermittivity,
)

VACUUM = ConstantPermittivity(eps=1.0)
GAP = ConstantPermittivity(eps=1.5)
WALL = ConstantPermittivity(eps=10.0)


class TestKappa:
    def test_static_limit(self):
        assert kappa(3.0, 0.0, 2e6) == 2e6

    def test_normal_incidence(self):
        assert kappa(4.0, 1e15, 0.0) == pytest.approx(2.0 * 1e15 / CONSTANTS.c)

    def test_hand_value(self):
        assert kappa(2.0, CONSTANTS.c, 1.0) == pytest.approx(math.sqrt(3.0))

    def test_zero_frequency_and_wavenumber_rejected(self):
        with pytest.raises(DomainError):
            kappa(2.0, 0.0, 0.0)


def test_fresnel_symmetric_cases():
    r_s, _ = fresnel(5.0, 5.0, 1.0, 3.0)
    assert r_s == 0.0
    _, r_p = fresnel(5.0, 5.0, 2.0, 2.0)
    assert r_p == 0.0


def test_approach_to_ideal_metal():
    zeta, k = 1e15, 1e7
    r_s, r_p = zip(
        *[
            reflection(ConstantPermittivity(eps=10.0**n), VACUUM, zeta, k)
            for n in range(3, 10)
        ]
    )
    assert np.all(np.diff(r_s) > 0)
    assert np.all(np.diff(r_p) < 0)
    assert r_s[-1] == pytest.approx(1.0, abs=1e-3)
    assert r_p[-1] == pytest.approx(-1.0, abs=1e-3)


def test_ideal_metal_reflection():
    r_s, r_p = reflection(IdealMetal(), VACUUM, 1e14, 1e6)
    assert (r_s, r_p) == (1.0, -1.0)


class TestModeSum:
    def test_zero_reflection(self):
        assert mode_sum(0.0, 1e6, 1e-6) == 0.0

    def test_half(self):
        assert mode_sum(1.0, math.log(2.0) / 2.0, 1.0) == pytest.approx(1.0)

    def test_hand_value(self):
        assert mode_sum(0.5, 1.0, 1.0) == pytest.approx(0.035019, rel=1e-4)

    def test_decreasing_in_gap_width(self):
        values = mode_sum(0.8, 1e6, np.linspace(1e-7, 1e-5, 50))
        assert np.all(np.diff(values) < 0)

    def test_deep_decay_underflows_to_zero(self):
        assert mode_sum(0.9, 1e12, 1e-6) == 0.0

    def test_unbound_rejected(self):
        with pytest.raises(DomainError):
            mode_sum(1.0, 0.0, 1.0)


class TestChi:
    def test_midpoint(self):
        expected = 0.5 * math.exp(-1.0) / (1.0 - 0.25 * math.exp(-2.0))
        assert chi(0.5, 1.0, 1.0, 0.5) == pytest.approx(expected)

    def test_mirror_symmetry(self):
        z = np.linspace(0.0, 1.0, 11)
        np.testing.assert_allclose(chi(-0.3, 2.0, 1.0, z), chi(-0.3, 2.0, 1.0, 1.0 - z))

    def test_hand_value_at_wall(self):
        # e^{-1} cosh(1) = (1 + e^{-2}) / 2
        assert chi(0.5, 1.0, 1.0, 0.0) == pytest.approx(0.29377, rel=1e-4)

    def test_sign_follows_reflection(self):
        assert chi(-0.5, 1.0, 1.0, 0.2) < 0

    def test_outside_gap_rejected(self):
        with pytest.raises(DomainError):
            chi(0.5, 1.0, 1.0, 1.5)


def test_sign_facts_for_dilute_gap():
    zeta = np.logspace(12, 17, 11)[:, None]
    k = np.logspace(3, 10, 15)[None, :]
    r_s, r_p = reflection(WALL, GAP, zeta * np.ones_like(k), k * np.ones_like(zeta))
    assert np.all(r_s >= 0)
    assert np.all(r_p <= 0)
    assert np.all(np.abs(r_s) < 1) and np.all(np.abs(r_p) < 1)


def test_large_wavenumber_limits():
    zeta = 1e15
    k = 1e3 * math.sqrt(10.0) * zeta / CONSTANTS.c
    r_s, r_p = reflection(WALL, GAP, zeta, k)
    tail_s, tail_p = tail_reflection(WALL, GAP, zeta)
    assert abs(r_s) < 1e-3
    assert tail_s == 0.0
    assert tail_p == pytest.approx((1.5 - 10.0) / 11.5)
    assert r_p == pytest.approx(tail_p, rel=1e-3)


def test_reflection_requires_positive_frequency():
    with pytest.raises(DomainError):
        reflection(WALL, GAP, 0.0, 1e6)


class TestStaticReflection:
    def test_drude_wall(self):
        r_s, r_p = static_reflection(DrudePermittivity(omega_p=1.37e16, gamma=5.32e13), VACUUM, 1e6)
        assert r_s == 0.0
        assert r_p == -1.0

    def test_plasma_wall_keeps_penetration_depth(self):
        omega_p = 1.37e16
        k = 1e7
        r_s, r_p = static_reflection(PlasmaPermittivity(omega_p=omega_p), VACUUM, k)
        kappa2 = math.sqrt(k**2 + (omega_p / CONSTANTS.c) ** 2)
        assert r_s == pytest.approx((kappa2 - k) / (kappa2 + k))
        assert r_p == -1.0

    def test_dielectric_walls(self):
        r_s, r_p = static_reflection(WALL, GAP, 1e6)
        assert r_s == 0.0
        assert r_p == pytest.approx((1.5 - 10.0) / 11.5)

    def test_zero_wavenumber_rejected(self):
        with pytest.raises(DomainError):
            static_reflection(WALL, GAP, 0.0)


class TestStaticPermittivityRatio:
    def test_shares_the_singularity_ordering(self):
        assert planar_kernels.SINGULARITY_ORDER is SINGULARITY_ORDER

    def test_more_singular_side_wins(self):
        drude = DrudePermittivity(omega_p=1.37e16, gamma=5.32e13)
        assert static_permittivity_ratio(GAP, drude) == 0.0
        assert static_permittivity_ratio(drude, WALL) == math.inf
        assert static_permittivity_ratio(GAP, IdealMetal()) == 0.0

    def test_same_class_uses_coefficients(self):
        dense = DrudePermittivity(omega_p=2e16, gamma=5e13)
        dilute = DrudePermittivity(omega_p=1e16, gamma=5e13)
        assert static_permittivity_ratio(dilute, dense) == pytest.approx(0.25)
        assert static_permittivity_ratio(GAP, WALL) == pytest.approx(0.15)
