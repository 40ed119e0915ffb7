"""
Classical electrostatics of dielectrics: the RW and AM stress tensors of
piecewise-uniform regions, static volume force densities on a grid, and the
condenser experiment (a dielectric liquid rising between vertical plates in
a horizontal field).
"""

import warnings
from enum import Enum
from typing import Annotated

import numpy as np
from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    model_validator,
)
from scipy.integrate import trapezoid

from casimir.errors import DomainError, FieldContinuityWarning
from materials.constants import CONSTANTS

Vector3 = tuple[float, float, float]


def _finite_vector(v: Vector3) -> Vector3:
    if not np.all(np.isfinite(v)):
        raise ValueError(f"field components must be finite, got {v}")
    return v


FiniteVector3 = Annotated[Vector3, AfterValidator(_finite_vector)]


class StressTensorKind(str, Enum):
    RW = "RW"
    AM = "AM"


class UniformFieldRegion(BaseModel):
    """Uniform static fields in a linear medium. D and H are derived, never stored."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    E: FiniteVector3 = (0.0, 0.0, 0.0)  # V/m
    B: FiniteVector3 = (0.0, 0.0, 0.0)  # T
    eps: float = Field(default=1.0, ge=1.0)
    mu: PositiveFloat = 1.0

    @property
    def D(self) -> np.ndarray:
        return (CONSTANTS.eps0 * self.eps) * np.asarray(self.E)

    @property
    def H(self) -> np.ndarray:
        return np.asarray(self.B) / (CONSTANTS.mu0 * self.mu)


class LiquidRiseSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    eps: float = Field(ge=1.0)
    E: float = Field(ge=0.0)  # horizontal field magnitude, V/m
    rho_mass: PositiveFloat  # kg/m^3
    g: PositiveFloat = 9.81


class DiscreteFieldState(BaseModel):
    """Fields sampled on a regular grid; vectors have shape (nx, ny, nz, 3), scalars (nx, ny, nz)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    spacing: tuple[PositiveFloat, PositiveFloat, PositiveFloat]
    E: np.ndarray
    B: np.ndarray
    P: np.ndarray  # polarisation, C/m^2
    M: np.ndarray  # magnetisation, A/m
    J: np.ndarray  # A/m^2
    rho_charge: np.ndarray  # C/m^3
    eps: np.ndarray
    mu: np.ndarray

    @model_validator(mode="after")
    def check_shapes(self):
        shape = np.shape(self.eps)
        if len(shape) != 3:
            raise ValueError(f"eps must be a 3D array, got shape {shape}")
        for name in ("E", "B", "P", "M", "J"):
            field = np.asarray(getattr(self, name), dtype=float)
            if field.shape != shape + (3,):
                raise ValueError(f"{name} must have shape {shape + (3,)}, got {field.shape}")
            if not np.all(np.isfinite(field)):
                raise ValueError(f"{name} contains non-finite values")
            setattr(self, name, field)
        for name in ("rho_charge", "mu"):
            field = np.asarray(getattr(self, name), dtype=float)
            if field.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {field.shape}")
            setattr(self, name, field)
        self.eps = np.asarray(self.eps, dtype=float)
        return self

    @property
    def shape(self) -> tuple[int, int, int]:
        return tuple(np.shape(self.eps))

    @classmethod
    def zeros(cls, shape: tuple[int, int, int], spacing) -> "DiscreteFieldState":
        vec = np.zeros(tuple(shape) + (3,))
        return cls(
            spacing=spacing,
            E=vec,
            B=vec.copy(),
            P=vec.copy(),
            M=vec.copy(),
            J=vec.copy(),
            rho_charge=np.zeros(shape),
            eps=np.ones(shape),
            mu=np.ones(shape),
        )


def _maxwell_tensor(E, D, B, H) -> np.ndarray:
    tensor = np.outer(E, D) + np.outer(H, B)
    tensor = tensor - 0.5 * np.eye(3) * (E @ D + H @ B)
    return 0.5 * (tensor + tensor.T)


def stress_tensor(kind: StressTensorKind, region: UniformFieldRegion) -> np.ndarray:
    """3x3 stress tensor (Pa).

    RW: eps0 E_i E_k + B_i B_k / mu0 - 1/2 delta_ik (eps0 E^2 + B^2 / mu0)
    AM: E_i D_k + H_i B_k - 1/2 delta_ik (E.D + H.B)
    """
    E = np.asarray(region.E, dtype=float)
    B = np.asarray(region.B, dtype=float)
    if StressTensorKind(kind) == StressTensorKind.RW:
        D = CONSTANTS.eps0 * E
        H = B / CONSTANTS.mu0
    else:
        D = region.D
        H = region.H
    return _maxwell_tensor(E, D, B, H)


def linear_polarization(E, eps):
    """P = eps0 (eps - 1) E for a linear medium; eps broadcasts over the vector axis."""
    E = np.asarray(E, dtype=float)
    eps = np.asarray(eps, dtype=float)
    if eps.ndim:
        eps = eps[..., None]
    return CONSTANTS.eps0 * (eps - 1.0) * E


def _scalar_gradient(field: np.ndarray, spacing) -> np.ndarray:
    return np.stack(np.gradient(field, *spacing, edge_order=2), axis=-1)


def _divergence(vector: np.ndarray, spacing) -> np.ndarray:
    return sum(
        np.gradient(vector[..., i], spacing[i], axis=i, edge_order=2) for i in range(3)
    )


def _curl(vector: np.ndarray, spacing) -> np.ndarray:
    def d(component, axis):
        return np.gradient(vector[..., component], spacing[axis], axis=axis, edge_order=2)

    return np.stack(
        [
            d(2, 1) - d(1, 2),
            d(0, 2) - d(2, 0),
            d(1, 0) - d(0, 1),
        ],
        axis=-1,
    )


def force_density(kind: StressTensorKind, state: DiscreteFieldState) -> np.ndarray:
    """Static volume force density (N/m^3) on every cell.

    RW: (rho - div P) E + J x B + (curl M) x B
    AM: rho E + J x B - (eps0/2) E^2 grad eps - (mu0/2) H^2 grad mu
    Second-order central differences inside, second-order one-sided at the edges.
    """
    if min(state.shape) < 3:
        raise DomainError(
            f"force_density needs at least 3 cells along every axis, got {state.shape}"
        )
    spacing = state.spacing
    E, B = state.E, state.B
    rho = state.rho_charge[..., None]
    lorentz = np.cross(state.J, B)

    if StressTensorKind(kind) == StressTensorKind.RW:
        bound_charge = rho - _divergence(state.P, spacing)[..., None]
        return bound_charge * E + lorentz + np.cross(_curl(state.M, spacing), B)

    E2 = np.sum(E**2, axis=-1)[..., None]
    H = B / (CONSTANTS.mu0 * state.mu[..., None])
    H2 = np.sum(H**2, axis=-1)[..., None]
    return (
        rho * E
        + lorentz
        - 0.5 * CONSTANTS.eps0 * E2 * _scalar_gradient(state.eps, spacing)
        - 0.5 * CONSTANTS.mu0 * H2 * _scalar_gradient(state.mu, spacing)
    )


def integrated_force(kind: StressTensorKind, state: DiscreteFieldState) -> np.ndarray:
    """Total force (N) on the grid volume, trapezoidal rule along each axis."""
    f = force_density(kind, state)
    dx, dy, dz = state.spacing
    return trapezoid(trapezoid(trapezoid(f, dx=dx, axis=0), dx=dy, axis=0), dx=dz, axis=0)


def surface_stress_jump(
    kind: StressTensorKind,
    below: UniformFieldRegion,
    above: UniformFieldRegion,
    normal: Vector3,
) -> float:
    """n . (T_above - T_below) . n: the normal force per area on the surface layer (Pa).

    `normal` points from `below` into `above`.
    """
    n = np.asarray(normal, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise DomainError(f"normal must be a unit 3-vector, got {normal}")

    E_below = np.asarray(below.E, dtype=float)
    E_above = np.asarray(above.E, dtype=float)
    tangential_jump = (E_above - E_below) - np.dot(E_above - E_below, n) * n
    scale = max(np.linalg.norm(E_below), np.linalg.norm(E_above), 1.0)
    if np.linalg.norm(tangential_jump) > 1e-9 * scale:
        warnings.warn(
            "Tangential E is discontinuous across the surface",
            FieldContinuityWarning,
            stacklevel=2,
        )

    return float(n @ (stress_tensor(kind, above) - stress_tensor(kind, below)) @ n)


def condenser_regions(spec: LiquidRiseSpec) -> tuple[UniformFieldRegion, UniformFieldRegion]:
    """(liquid, vacuum) on either side of the free surface, field horizontal along x."""
    field = (spec.E, 0.0, 0.0)
    return (
        UniformFieldRegion(E=field, eps=spec.eps),
        UniformFieldRegion(E=field, eps=1.0),
    )


VERTICAL = (0.0, 0.0, 1.0)


def liquid_rise_height(spec: LiquidRiseSpec) -> float:
    """h = eps0 (eps - 1) E^2 / (2 rho g): the AM surface force balanced by the liquid column."""
    liquid, vacuum = condenser_regions(spec)
    jump = surface_stress_jump(StressTensorKind.AM, liquid, vacuum, VERTICAL)
    return jump / (spec.rho_mass * spec.g)


def permittivity_ramp_state(
    eps_profile,
    field: float,
    shape: tuple[int, int, int],
    spacing: tuple[float, float, float],
) -> DiscreteFieldState:
    """Planar eps(z) profile in a uniform horizontal field E = (field, 0, 0).

    `eps_profile` maps the z coordinates (m) of the grid to eps. The
    polarisation is that of a linear medium.
    """
    nx, ny, nz = shape
    z = np.arange(nz) * spacing[2]
    eps = np.broadcast_to(np.asarray(eps_profile(z), dtype=float), shape).copy()
    state = DiscreteFieldState.zeros(shape, spacing)
    E = np.zeros(tuple(shape) + (3,))
    E[..., 0] = field
    state.E = E
    state.eps = eps
    state.P = linear_polarization(E, eps)
    return state
