"""
Relative permittivity on the imaginary frequency axis, eps(i*zeta).

Every model is an immutable pydantic value tagged by `kind`, so a material can
be read from a library file and dispatched without a class registry.
"""

from enum import Enum
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
)

from casimir.errors import DomainError


class ConstantPermittivity(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["constant"] = "constant"
    eps: float = Field(ge=1.0)


class DrudePermittivity(BaseModel):
    """eps = 1 + omega_p^2 / (zeta (zeta + gamma))"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["drude"] = "drude"
    omega_p: PositiveFloat
    gamma: PositiveFloat


class PlasmaPermittivity(BaseModel):
    """eps = 1 + omega_p^2 / zeta^2"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["plasma"] = "plasma"
    omega_p: PositiveFloat


class LorentzOscillator(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    strength: PositiveFloat  # rad^2/s^2
    omega: NonNegativeFloat
    gamma: NonNegativeFloat = 0.0


class LorentzPermittivity(BaseModel):
    """eps = 1 + sum_j f_j / (omega_j^2 + zeta^2 + gamma_j zeta)"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["lorentz"] = "lorentz"
    oscillators: list[LorentzOscillator] = Field(min_length=1)


class IdealMetal(BaseModel):
    """Perfect reflector: r_s = +1 and r_p = -1 at every frequency.

    Only valid as a wall; it has no finite permittivity to evaluate.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["ideal_metal"] = "ideal_metal"


PermittivityModel = Annotated[
    Union[
        ConstantPermittivity,
        DrudePermittivity,
        PlasmaPermittivity,
        LorentzPermittivity,
    ],
    Field(discriminator="kind"),
]

WallModel = Annotated[
    Union[
        ConstantPermittivity,
        DrudePermittivity,
        PlasmaPermittivity,
        LorentzPermittivity,
        IdealMetal,
    ],
    Field(discriminator="kind"),
]


class ZeroFrequencyClass(str, Enum):
    FINITE = "finite"
    DIVERGENT_AS_1_OVER_ZETA = "divergent_as_1_over_zeta"
    DIVERGENT_AS_1_OVER_ZETA_SQUARED = "divergent_as_1_over_zeta_squared"


# Ordering by how singular eps becomes as zeta -> 0.
SINGULARITY_ORDER = {
    ZeroFrequencyClass.FINITE: 0,
    ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA: 1,
    ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA_SQUARED: 2,
}


def eval_permittivity(model, zeta):
    """Evaluate eps(i*zeta) for a scalar or an array of frequencies (rad/s).

    Drude and plasma models (and Lorentz oscillators with omega = 0) return
    +inf at zeta = 0. Callers handling the static term must branch on
    `zero_frequency_class` instead of using that value.
    """
    if isinstance(model, IdealMetal):
        raise DomainError("ideal metal walls have no finite permittivity")

    z = np.asarray(zeta, dtype=float)
    if np.any(np.isnan(z)) or np.any(z < 0):
        raise DomainError(f"zeta must be >= 0, got {zeta}")

    with np.errstate(divide="ignore"):
        if isinstance(model, ConstantPermittivity):
            eps = np.full_like(z, model.eps)
        elif isinstance(model, DrudePermittivity):
            eps = 1.0 + model.omega_p**2 / (z * (z + model.gamma))
        elif isinstance(model, PlasmaPermittivity):
            eps = 1.0 + model.omega_p**2 / z**2
        elif isinstance(model, LorentzPermittivity):
            eps = np.ones_like(z)
            for osc in model.oscillators:
                eps = eps + osc.strength / (osc.omega**2 + z**2 + osc.gamma * z)
        else:
            raise TypeError(f"Unknown permittivity model: {type(model).__name__}")

    if eps.ndim == 0:
        return float(eps)
    return eps


def _oscillator_static_limit(osc: LorentzOscillator):
    if osc.omega > 0:
        return ZeroFrequencyClass.FINITE, osc.strength / osc.omega**2
    if osc.gamma > 0:
        return ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA, osc.strength / osc.gamma
    return ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA_SQUARED, osc.strength


def static_limit(model) -> tuple[ZeroFrequencyClass, float]:
    """Leading behavior of eps(i*zeta) as zeta -> 0.

    Returns the class and its coefficient: eps(0) for finite models,
    C for eps ~ C/zeta and C for eps ~ C/zeta^2.
    """
    if isinstance(model, ConstantPermittivity):
        return ZeroFrequencyClass.FINITE, model.eps
    if isinstance(model, DrudePermittivity):
        return (
            ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA,
            model.omega_p**2 / model.gamma,
        )
    if isinstance(model, PlasmaPermittivity):
        return ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA_SQUARED, model.omega_p**2
    if isinstance(model, LorentzPermittivity):
        limits = [_oscillator_static_limit(osc) for osc in model.oscillators]
        leading = max((cls for cls, _ in limits), key=SINGULARITY_ORDER.get)
        coefficient = sum(coef for cls, coef in limits if cls == leading)
        if leading == ZeroFrequencyClass.FINITE:
            coefficient += 1.0
        return leading, coefficient
    raise TypeError(f"No static limit for {type(model).__name__}")


def zero_frequency_class(model) -> ZeroFrequencyClass:
    return static_limit(model)[0]


def plasma_static_term(model) -> float:
    """lim zeta->0 of eps(i*zeta) * zeta^2 (nonzero only for the 1/zeta^2 class)."""
    cls, coefficient = static_limit(model)
    if cls == ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA_SQUARED:
        return coefficient
    return 0.0
