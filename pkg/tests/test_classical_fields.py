import numpy as np
import pytest
from pydantic import ValidationError

from casimir.errors import DomainError, FieldContinuityWarning
from classical.field_io import load_field_state, save_field_state
from classical.fields import (
    VERTICAL,
    DiscreteFieldState,
    LiquidRiseSpec,
    StressTensorKind,
    UniformFieldRegion,
    condenser_regions,
    force_density,
    integrated_force,
    linear_polarization,
    liquid_rise_height,
    permittivity_ramp_state,
    stress_tensor,
    surface_stress_jump,
)
from materials.constants import CONSTANTS

EPS0 = CONSTANTS.eps0
WATER = LiquidRiseSpec(eps=80.0, E=1e6, rho_mass=1000.0, g=9.81)


class TestStressTensor:
    def test_vacuum_tensors_agree(self):
        region = UniformFieldRegion(E=(1e5, -2e4, 3e3), B=(0.1, 0.2, -0.3))
        np.testing.assert_array_equal(
            stress_tensor(StressTensorKind.RW, region), stress_tensor(StressTensorKind.AM, region)
        )

    def test_zero_fields(self):
        tensor = stress_tensor(StressTensorKind.AM, UniformFieldRegion(eps=5.0))
        np.testing.assert_array_equal(tensor, np.zeros((3, 3)))

    def test_horizontal_field(self):
        E0 = 2e5
        tensor = stress_tensor(StressTensorKind.RW, UniformFieldRegion(E=(E0, 0.0, 0.0), eps=4.0))
        expected = 0.5 * EPS0 * E0**2
        assert tensor[0, 0] == pytest.approx(expected)
        assert tensor[1, 1] == pytest.approx(-expected)
        assert tensor[2, 2] == pytest.approx(-expected)

    @pytest.mark.parametrize("kind", list(StressTensorKind))
    def test_symmetric(self, kind):
        rng = np.random.default_rng(7)
        for _ in range(5):
            region = UniformFieldRegion(
                E=tuple(rng.normal(size=3) * 1e4),
                B=tuple(rng.normal(size=3)),
                eps=1.0 + rng.random() * 10,
                mu=1.0 + rng.random(),
            )
            tensor = stress_tensor(kind, region)
            np.testing.assert_array_equal(tensor, tensor.T)

    def test_non_finite_field_rejected(self):
        with pytest.raises(ValidationError):
            UniformFieldRegion(E=(np.inf, 0.0, 0.0))


class TestSurfaceStressJump:
    def test_am_jump_is_surface_force(self):
        liquid, vacuum = condenser_regions(WATER)
        jump = surface_stress_jump(StressTensorKind.AM, liquid, vacuum, VERTICAL)
        assert jump == pytest.approx(0.5 * EPS0 * 79.0 * 1e12, rel=1e-12)

    def test_rw_jump_vanishes(self):
        liquid, vacuum = condenser_regions(WATER)
        assert surface_stress_jump(StressTensorKind.RW, liquid, vacuum, VERTICAL) == 0.0

    @pytest.mark.parametrize("kind", list(StressTensorKind))
    def test_identical_regions(self, kind):
        region = UniformFieldRegion(E=(1e3, 0.0, 2e3), eps=3.0)
        assert surface_stress_jump(kind, region, region, VERTICAL) == 0.0

    def test_non_unit_normal_rejected(self):
        region = UniformFieldRegion()
        with pytest.raises(DomainError):
            surface_stress_jump(StressTensorKind.AM, region, region, (0.0, 0.0, 2.0))

    def test_tangential_discontinuity_warns(self):
        below = UniformFieldRegion(E=(1e3, 0.0, 0.0), eps=2.0)
        above = UniformFieldRegion(E=(2e3, 0.0, 0.0))
        with pytest.warns(FieldContinuityWarning):
            surface_stress_jump(StressTensorKind.AM, below, above, VERTICAL)


class TestLiquidRise:
    def test_water_condenser(self):
        assert liquid_rise_height(WATER) == pytest.approx(0.035651, rel=1e-4)

    def test_equals_surface_force_over_weight(self):
        liquid, vacuum = condenser_regions(WATER)
        jump = surface_stress_jump(StressTensorKind.AM, liquid, vacuum, VERTICAL)
        assert liquid_rise_height(WATER) == jump / (WATER.rho_mass * WATER.g)

    @pytest.mark.parametrize("eps, E", [(1.0, 1e6), (80.0, 0.0)])
    def test_no_rise(self, eps, E):
        spec = LiquidRiseSpec(eps=eps, E=E, rho_mass=1000.0)
        assert liquid_rise_height(spec) == 0.0

    def test_invalid_spec(self):
        with pytest.raises(ValidationError):
            LiquidRiseSpec(eps=0.5, E=1e6, rho_mass=1000.0)
        with pytest.raises(ValidationError):
            LiquidRiseSpec(eps=2.0, E=1e6, rho_mass=0.0)


def _uniform_state(shape=(4, 4, 4), eps=5.0, field=(1e4, -2e3, 5e2)):
    state = DiscreteFieldState.zeros(shape, (1e-3, 1e-3, 1e-3))
    E = np.broadcast_to(np.asarray(field), tuple(shape) + (3,)).copy()
    state.E = E
    state.eps = np.full(shape, eps)
    state.P = linear_polarization(E, state.eps)
    return state


class TestForceDensity:
    @pytest.mark.parametrize("kind", list(StressTensorKind))
    def test_homogeneous_interior(self, kind):
        state = _uniform_state()
        # one-sided edge stencils leave rounding residue of this order
        scale = EPS0 * np.max(state.eps) * np.max(np.sum(state.E**2, axis=-1)) / min(state.spacing)
        np.testing.assert_allclose(force_density(kind, state), 0.0, atol=1e-12 * scale)

    @pytest.mark.parametrize("kind", list(StressTensorKind))
    def test_zero_fields(self, kind):
        state = DiscreteFieldState.zeros((3, 3, 3), (1.0, 1.0, 1.0))
        np.testing.assert_array_equal(force_density(kind, state), 0.0)

    def test_linear_ramp(self):
        E0, slope = 1e5, 40.0
        state = permittivity_ramp_state(lambda z: 1.0 + slope * z, E0, (3, 3, 11), (1e-3,) * 3)
        f_am = force_density(StressTensorKind.AM, state)
        np.testing.assert_allclose(f_am[..., 2], -0.5 * EPS0 * E0**2 * slope, rtol=1e-9)
        scale = EPS0 * E0**2 * slope
        np.testing.assert_allclose(f_am[..., :2], 0.0, atol=1e-12 * scale)
        np.testing.assert_allclose(
            force_density(StressTensorKind.RW, state), 0.0, atol=1e-12 * scale
        )

    def test_second_order_convergence(self):
        E0 = 1e4
        errors, steps = [], []
        for n in (21, 41, 81, 161):
            h = 1.0 / (n - 1)
            state = permittivity_ramp_state(lambda z: 2.0 + np.sin(z), E0, (3, 3, n), (h, h, h))
            z = np.arange(n) * h
            exact = -0.5 * EPS0 * E0**2 * np.cos(z)
            f_z = force_density(StressTensorKind.AM, state)[1, 1, :, 2]
            errors.append(np.max(np.abs(f_z - exact)))
            steps.append(h)
        order = np.polyfit(np.log(steps), np.log(errors), 1)[0]
        assert order == pytest.approx(2.0, abs=0.1)

    def test_free_charge_and_current(self):
        state = DiscreteFieldState.zeros((3, 3, 3), (1.0, 1.0, 1.0))
        state.E[..., 0] = 2.0
        state.B[..., 2] = 3.0
        state.J[..., 1] = 5.0
        state.rho_charge[...] = 7.0
        expected = np.array([7.0 * 2.0 + 5.0 * 3.0, 0.0, 0.0])
        for kind in StressTensorKind:
            np.testing.assert_allclose(force_density(kind, state)[1, 1, 1], expected)

    def test_grid_too_small(self):
        state = DiscreteFieldState.zeros((3, 2, 3), (1.0, 1.0, 1.0))
        with pytest.raises(DomainError):
            force_density(StressTensorKind.AM, state)

    def test_divergence_theorem(self):
        eps_bottom, E0 = 80.0, 1e5
        n, dz = 21, 5e-5
        height = (n - 1) * dz
        state = permittivity_ramp_state(
            lambda z: eps_bottom + (1.0 - eps_bottom) * z / height, E0, (3, 3, n), (2e-4, 3e-4, dz)
        )
        force = integrated_force(StressTensorKind.AM, state)
        area = 2 * 2e-4 * 2 * 3e-4
        liquid = UniformFieldRegion(E=(E0, 0.0, 0.0), eps=eps_bottom)
        vacuum = UniformFieldRegion(E=(E0, 0.0, 0.0))
        jump = surface_stress_jump(StressTensorKind.AM, liquid, vacuum, VERTICAL)
        assert force[2] == pytest.approx(area * jump, rel=1e-9)


def test_linear_polarization():
    P = linear_polarization(np.array([1.0, 0.0, 2.0]), 3.0)
    np.testing.assert_allclose(P, EPS0 * 2.0 * np.array([1.0, 0.0, 2.0]))


def test_state_shape_validation():
    with pytest.raises(ValidationError):
        DiscreteFieldState(
            spacing=(1.0, 1.0, 1.0),
            E=np.zeros((3, 3, 3, 3)),
            B=np.zeros((3, 3, 3, 3)),
            P=np.zeros((3, 3, 3, 3)),
            M=np.zeros((3, 3, 3, 3)),
            J=np.zeros((3, 3, 3, 2)),
            rho_charge=np.zeros((3, 3, 3)),
            eps=np.ones((3, 3, 3)),
            mu=np.ones((3, 3, 3)),
        )


def test_field_state_file(tmp_path):
    state = permittivity_ramp_state(lambda z: 1.0 + 100.0 * z, 3e4, (3, 4, 5), (1e-3, 2e-3, 3e-3))
    state.B[..., 1] = 0.25
    path = tmp_path / "state.txt"
    save_field_state(state, path)
    loaded = load_field_state(path)
    assert loaded.shape == (3, 4, 5)
    assert loaded.spacing == state.spacing
    for name in ("E", "B", "P", "M", "J", "rho_charge", "eps", "mu"):
        np.testing.assert_array_equal(getattr(loaded, name), getattr(state, name))


def test_field_state_file_without_header(tmp_path):
    path = tmp_path / "bare.txt"
    path.write_text("0 0 0 " + " ".join(["0"] * 18) + "\n")
    with pytest.raises(ValueError, match="shape"):
        load_field_state(path)
