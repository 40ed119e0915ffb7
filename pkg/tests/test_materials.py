import numpy as np
import pytest
from pydantic import ValidationError
from scipy import constants as sc

from casimir.errors import DomainError
from materials.constants import CONSTANTS, PhysicalConstants
from materials.library import (
    MaterialLibrary,
    load_material_library,
    read_library_file,
    resolve_material,
)
from materials.permittivity import (
    ConstantPermittivity,
    DrudePermittivity,
    IdealMetal,
    LorentzOscillator,
    LorentzPermittivity,
    PlasmaPermittivity,
    ZeroFrequencyClass,
    eval_permittivity,
    plasma_static_term,
    static_limit,
    zero_frequency_class,
)

SILICA = LorentzPermittivity(
    oscillators=[
        LorentzOscillator(strength=6.8214e28, omega=1.88e14),
        LorentzOscillator(strength=4.8049e32, omega=2.09e16),
    ]
)

ALL_MODELS = [
    ConstantPermittivity(eps=2.0),
    DrudePermittivity(omega_p=1.37e16, gamma=5.32e13),
    PlasmaPermittivity(omega_p=1.37e16),
    SILICA,
]


def test_constant_permittivity():
    model = ConstantPermittivity(eps=2.0)
    assert eval_permittivity(model, 1e15) == 2.0
    assert isinstance(eval_permittivity(model, 1e15), float)
    np.testing.assert_array_equal(eval_permittivity(model, np.array([0.0, 1e12])), [2.0, 2.0])


def test_plasma_at_plasma_frequency():
    model = PlasmaPermittivity(omega_p=1e16)
    assert eval_permittivity(model, 1e16) == pytest.approx(2.0)


def test_drude_hand_value():
    model = DrudePermittivity(omega_p=1.38e16, gamma=5.07e13)
    assert eval_permittivity(model, 1e15) == pytest.approx(182.25, rel=1e-4)


def test_divergent_models_return_inf_at_zero():
    assert eval_permittivity(DrudePermittivity(omega_p=1e16, gamma=1e13), 0.0) == np.inf
    assert eval_permittivity(PlasmaPermittivity(omega_p=1e16), 0.0) == np.inf


def test_negative_frequency_rejected():
    with pytest.raises(DomainError):
        eval_permittivity(ConstantPermittivity(eps=2.0), -1.0)


def test_ideal_metal_has_no_permittivity():
    with pytest.raises(DomainError):
        eval_permittivity(IdealMetal(), 1e15)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "drude", "omega_p": -1.0, "gamma": 1e13},
        {"kind": "drude", "omega_p": 1e16, "gamma": 0.0},
        {"kind": "plasma", "omega_p": 0.0},
        {"kind": "constant", "eps": 0.5},
        {"kind": "lorentz", "oscillators": []},
    ],
)
def test_invalid_parameters_rejected_at_construction(kwargs):
    with pytest.raises(ValidationError):
        MaterialLibrary.model_validate({"materials": {"bad": kwargs}})


def test_zero_frequency_classes():
    assert zero_frequency_class(ConstantPermittivity(eps=5.0)) == ZeroFrequencyClass.FINITE
    assert zero_frequency_class(SILICA) == ZeroFrequencyClass.FINITE
    assert (
        zero_frequency_class(DrudePermittivity(omega_p=1e16, gamma=1e13))
        == ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA
    )
    assert (
        zero_frequency_class(PlasmaPermittivity(omega_p=1e16))
        == ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA_SQUARED
    )


def test_lorentz_static_limit():
    cls, eps0 = static_limit(SILICA)
    assert cls == ZeroFrequencyClass.FINITE
    expected = 1.0 + 6.8214e28 / 1.88e14**2 + 4.8049e32 / 2.09e16**2
    assert eps0 == pytest.approx(expected)
    assert eval_permittivity(SILICA, 0.0) == pytest.approx(expected)


def test_free_lorentz_oscillator_is_divergent():
    damped = LorentzPermittivity(
        oscillators=[LorentzOscillator(strength=1e30, omega=0.0, gamma=1e13)]
    )
    assert zero_frequency_class(damped) == ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA
    assert static_limit(damped)[1] == pytest.approx(1e17)


def test_plasma_static_term():
    assert plasma_static_term(PlasmaPermittivity(omega_p=2e15)) == pytest.approx(4e30)
    assert plasma_static_term(DrudePermittivity(omega_p=2e15, gamma=1e13)) == 0.0
    assert plasma_static_term(ConstantPermittivity(eps=3.0)) == 0.0


@pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.kind)
def test_monotone_decay_on_imaginary_axis(model):
    zeta = np.logspace(10, 20, 200)
    eps = eval_permittivity(model, zeta)
    assert np.all(np.diff(eps) <= 0)
    assert np.all(eps - 1.0 >= 0)


@pytest.mark.parametrize("model", ALL_MODELS[1:], ids=lambda m: m.kind)
def test_high_frequency_limit(model):
    if isinstance(model, LorentzPermittivity):
        scale = max(osc.omega for osc in model.oscillators)
    else:
        scale = model.omega_p
    assert abs(eval_permittivity(model, 1e3 * scale) - 1.0) < 1e-4


def test_builtin_library():
    library = load_material_library()
    assert isinstance(library["ideal-metal"], IdealMetal)
    assert library["vacuum"] == ConstantPermittivity(eps=1.0)
    assert isinstance(library["gold-drude"], DrudePermittivity)
    assert isinstance(library["silica-lorentz"], LorentzPermittivity)


def test_extra_library_overrides_builtin(tmp_path):
    path = tmp_path / "extra.toml"
    path.write_text(
        '[materials.vacuum]\nkind = "constant"\neps = 1.0\n\n'
        '[materials.glass]\nkind = "constant"\neps = 2.25\n'
    )
    library = load_material_library(path)
    assert library["glass"] == ConstantPermittivity(eps=2.25)
    assert "gold-drude" in library


def test_library_rejects_unknown_keys(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text('[materials.glass]\nkind = "constant"\neps = 2.25\ncolour = "blue"\n')
    with pytest.raises(ValidationError):
        read_library_file(path)


def test_unknown_material_lists_known_names():
    with pytest.raises(ValueError, match="Known materials: .*vacuum"):
        resolve_material("unobtainium", load_material_library())


def test_constants_match_codata():
    assert CONSTANTS.c == sc.c
    assert CONSTANTS.hbar == sc.hbar
    with pytest.raises(ValidationError):
        PhysicalConstants(eps0=sc.epsilon_0, mu0=sc.mu_0, c=3.1e8, hbar=sc.hbar, kB=sc.k)
