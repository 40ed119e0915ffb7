from typing import Optional

from pydantic import BaseModel

from casimir.spectral_engine import ConvergenceReport


class PressureResult(BaseModel):
    """AM (Lifshitz) pressure; negative means attraction."""

    pressure: float  # Pa
    te_part: float
    tm_part: float
    error: float
    report: ConvergenceReport


class RwDecomposition(BaseModel):
    """Per-bracket contributions to <T_zz^RW(z)> (Pa).

    first and mode do not depend on z; chi holds one value per grid point and
    m0_chi is the zero-frequency share of chi (its prefactor zeta^2 vanishes).
    """

    first: float
    mode: float
    chi: list[float]
    m0_chi: list[float]


class StressProfileResult(BaseModel):
    z_grid: list[float]
    values: list[float]  # <T_zz^RW(z)>, Pa
    cutoff: Optional[float] = None  # 1/m, None = infinite
    per_point_error: list[float]
    decomposition: RwDecomposition
    report: ConvergenceReport


class CutoffScanResult(BaseModel):
    """RW pressure P^RW(z; cutoff) = -<T_zz^RW(z)> and its linear fit in the cutoff."""

    z: float
    cutoffs: list[float]
    values: list[float]
    errors: list[float]
    fitted_intercept: float  # c0, Pa
    fitted_slope: float  # c1, Pa m
    slope_stderr: float
    correlation: float
    analytic_slope: float
    relative_deviation: Optional[float] = None
    cutoff_insensitive: bool
    # interface scans only: slope linear in the cutoff and matching the tail constant
    asymptotic: Optional[bool] = None
    matsubara_terms: int
    matsubara_window_truncated: bool = False
    report: ConvergenceReport


class GrowthResult(BaseModel):
    """Log-log growth of the z-dependent RW stress towards an interface."""

    z: list[float]
    values: list[float]
    exponent: Optional[float] = None
    exponent_stderr: Optional[float] = None
    has_divergent_part: bool
    # False when the largest z is outside the 1/z range of the first frequency
    asymptotic: bool = True
    message: str = ""
    matsubara_terms: int
    matsubara_window_truncated: bool = False
    report: ConvergenceReport
