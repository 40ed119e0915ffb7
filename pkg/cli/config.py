"""
Run configuration: one TOML file with a section per command.

    [materials]
    library = "my_materials.toml"     # optional, merged over the built-in library

    [quadrature]                      # shared QuadratureSpec fields
    rel_tol = 1e-8

    [pressure]
    wall = "gold-drude"
    gap = "vacuum"
    a = { min = 1e-7, max = 1e-5, points = 5, spacing = "geometric" }
    T = [0.0, 300.0]

Sections may carry their own [<section>.quadrature] table overriding the
shared one. Grids are explicit lists or ranges. SI units throughout.
"""

import json
import os
import tomllib
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    PositiveInt,
    field_validator,
)

from casimir.spectral_engine import QuadratureSpec
from materials.library import load_material_library, resolve_material
from schema.cavity import CavitySpec

MATERIAL_LIBRARY_ENV = "CASIMIR_MATERIAL_LIBRARY"


class RangeGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    min: float
    max: float
    points: PositiveInt
    spacing: Literal["uniform", "geometric"] = "uniform"

    def values(self) -> list[float]:
        if self.points == 1:
            return [self.min]
        if self.spacing == "geometric":
            if self.min <= 0 or self.max <= 0:
                raise ValueError("geometric grids need positive bounds")
            return np.geomspace(self.min, self.max, self.points).tolist()
        return np.linspace(self.min, self.max, self.points).tolist()


Grid = Union[list[float], RangeGrid]


def resolve_grid(grid: Grid) -> list[float]:
    values = grid.values() if isinstance(grid, RangeGrid) else [float(v) for v in grid]
    if not values:
        raise ValueError("grids must not be empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"grid values must be strictly increasing: {values}")
    return values


class QuadratureOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rel_tol: Optional[PositiveFloat] = None
    abs_tol: Optional[NonNegativeFloat] = None
    max_matsubara_terms: Optional[PositiveInt] = None
    k_cutoff: Optional[PositiveFloat] = None
    max_quadrature_evals_per_term: Optional[PositiveInt] = None
    force_cutoff: Optional[bool] = None

    def apply(self, spec: QuadratureSpec) -> QuadratureSpec:
        update = self.model_dump(exclude_none=True)
        return QuadratureSpec.model_validate({**spec.model_dump(), **update})


class SectionBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    quadrature: QuadratureOverrides = QuadratureOverrides()


class CavitySection(SectionBase):
    wall: str
    gap: str


class PressureSection(CavitySection):
    a: Grid
    T: Grid

    @field_validator("a", "T")
    @classmethod
    def check_grid(cls, grid):
        resolve_grid(grid)
        return grid


class RwProfileSection(CavitySection):
    a: PositiveFloat
    T: NonNegativeFloat
    z: Grid

    @field_validator("z")
    @classmethod
    def check_grid(cls, grid):
        resolve_grid(grid)
        return grid


class CutoffScanSection(CavitySection):
    a: PositiveFloat
    T: PositiveFloat
    z: NonNegativeFloat = 0.0
    cutoffs: Grid

    @field_validator("cutoffs")
    @classmethod
    def check_grid(cls, grid):
        resolve_grid(grid)
        return grid


class NearInterfaceSection(CavitySection):
    a: PositiveFloat
    T: PositiveFloat
    z: Grid

    @field_validator("z")
    @classmethod
    def check_grid(cls, grid):
        resolve_grid(grid)
        return grid


class LiquidRiseSection(SectionBase):
    eps: float = Field(ge=1.0)
    E: NonNegativeFloat
    rho_mass: PositiveFloat
    g: PositiveFloat = 9.81


class ClassicalSection(LiquidRiseSection):
    # force-density demo: eps falls linearly from eps to 1 across the surface layer
    ramp_cells: int = Field(default=21, ge=3)
    ramp_height: PositiveFloat = 1e-3
    field_state: Optional[str] = None
    force_density_out: Optional[str] = None


class MaterialsSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    library: Optional[str] = None


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    materials: MaterialsSection = MaterialsSection()
    quadrature: QuadratureOverrides = QuadratureOverrides()
    pressure: Optional[PressureSection] = None
    rw_profile: Optional[RwProfileSection] = None
    cutoff_scan: Optional[CutoffScanSection] = None
    near_interface: Optional[NearInterfaceSection] = None
    classical: Optional[ClassicalSection] = None
    liquid_rise: Optional[LiquidRiseSection] = None

    def section(self, name: str):
        section = getattr(self, name)
        if section is None:
            raise ValueError(f"configuration has no [{name}] section")
        return section

    def quadrature_for(self, section: SectionBase, workers: int = 1) -> QuadratureSpec:
        spec = self.quadrature.apply(QuadratureSpec())
        spec = section.quadrature.apply(spec)
        return spec.model_copy(update={"workers": workers})

    def library(self):
        path = self.materials.library or os.environ.get(MATERIAL_LIBRARY_ENV)
        return load_material_library(path)

    def cavity(self, section: CavitySection, a: float, T: float) -> CavitySpec:
        library = self.library()
        return CavitySpec(
            a=a,
            T=T,
            wall=resolve_material(section.wall, library),
            gap=resolve_material(section.gap, library),
        )

    def resolved_json(self, name: str) -> str:
        """Sorted JSON of the section used by a command plus the shared settings."""
        section = self.section(name)
        data = {
            "materials": self.materials.model_dump(),
            "quadrature": self.quadrature.model_dump(),
            name: section.model_dump(),
        }
        if isinstance(section, CavitySection):
            library = self.library()
            data["resolved_materials"] = {
                key: resolve_material(key, library).model_dump()
                for key in sorted({section.wall, section.gap})
            }
        return json.dumps(data, sort_keys=True)


def load_run_config(path: Path | str) -> RunConfig:
    """Parse a TOML run configuration. TOML and validation errors propagate."""
    with open(path, "rb") as f:
        data = tomllib.load(f)
    return RunConfig.model_validate(data)
