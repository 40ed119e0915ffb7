"""
Raabe-Welsch gap stress <T_zz^RW(z)> of the symmetric planar cavity.

Per frequency, in y = 2 a kappa1 and with A = (eps1 - 1) zeta^2 / (2 c^2):

    first = (2a)^-3 int dy y^2 (1/d_s + 1/(eps1 d_p))
    mode  = -A / (2a) int dy (1/d_s - 1/d_p)
    chi   = -A / (2a) int dy (chi_s(z) - chi_p(z))

each times kB T / pi. Only `chi` depends on z, and A = 0 at zeta = 0.
Outside the gap the RW stress is taken at infinity, i.e. zero, so the RW
pressure at z is -<T_zz^RW(z)>.
"""

import math
from typing import Optional, Sequence

import numpy as np

from casimir.am import transverse_cutoff_span
from casimir.errors import DivergentStressError, DomainError
from casimir.planar_kernels import chi, mode_sum, reflection_from_k2, sample_media
from casimir.spectral_engine import (
    ConvergenceReport,
    QuadratureSpec,
    SeriesResult,
    TermBlock,
    geometric_breakpoints,
    integrate_kperp,
    matsubara_frequency,
    matsubara_sum,
    zero_temperature_integral,
)
from materials.constants import CONSTANTS
from schema.cavity import CavitySpec
from schema.results import RwDecomposition, StressProfileResult

FIRST, MODE = 0, 1
CHI_START = 2


def _check_positions(cavity: CavitySpec, z_grid: np.ndarray, k_cutoff: Optional[float]):
    a = cavity.a
    if z_grid.size == 0:
        raise DomainError("z grid is empty")
    if np.any(z_grid < 0) or np.any(z_grid > a):
        raise DomainError(f"z must lie inside the gap [0, {a}] m")
    if k_cutoff is None and np.any((z_grid == 0) | (z_grid == a)):
        raise DivergentStressError(
            "The RW stress diverges at the interfaces without a transverse cutoff; "
            "run cutoff_scan with finite cutoffs to quantify the divergence"
        )


def _nearest_wall_distance(cavity: CavitySpec, z_grid: np.ndarray) -> float:
    return float(np.min(np.minimum(z_grid, cavity.a - z_grid)))


def rw_term_block(
    cavity: CavitySpec,
    zeta: np.ndarray,
    z_grid: np.ndarray,
    spec: QuadratureSpec,
    weight: float,
) -> TermBlock:
    """Columns [first, mode, chi(z_1), ..., chi(z_n)] for each frequency in `zeta`."""
    a = cavity.a
    media = sample_media(cavity.wall, cavity.gap, zeta)
    y0 = 2.0 * a * np.sqrt(media.w1)
    amplitude = 0.5 * (media.w1 - zeta**2 / CONSTANTS.c**2)
    first_scale = weight / math.pi / (2.0 * a) ** 3
    second_scale = -weight / math.pi * amplitude / (2.0 * a)
    zs = z_grid[None, :]

    def integrand(u):
        y = y0 + u
        k2 = u * (u + 2.0 * y0) / (2.0 * a) ** 2
        r_s, r_p, kappa1 = reflection_from_k2(media, k2)
        inv_d_s = mode_sum(r_s, kappa1, a)
        inv_d_p = mode_sum(r_p, kappa1, a)
        first = first_scale * y**2 * (inv_d_s + media.inv_eps1 * inv_d_p)
        mode = second_scale * (inv_d_s - inv_d_p)
        chi_part = second_scale[:, None] * (
            chi(r_s[:, None], kappa1[:, None], a, zs)
            - chi(r_p[:, None], kappa1[:, None], a, zs)
        )
        return np.concatenate([first[:, None], mode[:, None], chi_part], axis=1)

    nearest = _nearest_wall_distance(cavity, z_grid)
    if nearest > 0:
        top = 64.0 * max(1.0, a / nearest)
    else:
        top = 2.0 * a * spec.k_cutoff
    result = integrate_kperp(
        integrand,
        k_cutoff=transverse_cutoff_span(media, a, spec.k_cutoff),
        spec=spec,
        breakpoints=geometric_breakpoints(top),
    )
    return TermBlock(
        values=np.asarray(result.value),
        error=result.error,
        evaluations=result.evaluations,
        converged=result.converged,
    )


def rw_series(
    cavity: CavitySpec,
    z_grid: Sequence[float],
    spec: Optional[QuadratureSpec] = None,
    *,
    fixed_terms: Optional[int] = None,
) -> SeriesResult:
    """The decomposed RW stress summed over frequencies; value columns as in rw_term_block."""
    spec = spec or QuadratureSpec()
    z_grid = np.asarray(z_grid, dtype=float)
    _check_positions(cavity, z_grid, spec.k_cutoff)

    if cavity.T > 0:
        weight = CONSTANTS.kB * cavity.T

        def term(m):
            zeta = matsubara_frequency(m, cavity.T)
            return rw_term_block(cavity, zeta, z_grid, spec, weight)

        return matsubara_sum(term, spec, fixed_terms=fixed_terms)

    result = zero_temperature_integral(
        lambda zeta: rw_term_block(cavity, zeta, z_grid, spec, 1.0),
        spec,
        scale=CONSTANTS.c / (2.0 * cavity.a),
    )
    report = ConvergenceReport(
        matsubara_terms_used=0,
        total_function_evals=result.evaluations,
        converged=result.converged,
    )
    # no discrete zero-frequency term on the continuous axis
    return SeriesResult(
        result.value, result.error, report, np.zeros_like(result.value)
    )


def profile_from_series(
    z_grid: Sequence[float], series: SeriesResult, cutoff: Optional[float]
) -> StressProfileResult:
    columns = np.asarray(series.value)
    first, mode, chi_part = columns[FIRST], columns[MODE], columns[CHI_START:]
    zero = np.asarray(series.zero_term)
    values = first + mode + chi_part
    return StressProfileResult(
        z_grid=[float(z) for z in z_grid],
        values=values.tolist(),
        cutoff=cutoff,
        per_point_error=[series.error] * len(values),
        decomposition=RwDecomposition(
            first=float(first),
            mode=float(mode),
            chi=chi_part.tolist(),
            m0_chi=(0.5 * zero[CHI_START:]).tolist(),
        ),
        report=series.report,
    )


def rw_profile(
    cavity: CavitySpec, z_grid: Sequence[float], spec: Optional[QuadratureSpec] = None
) -> StressProfileResult:
    """<T_zz^RW(z)> on a grid, sharing one transverse quadrature per frequency."""
    spec = spec or QuadratureSpec()
    series = rw_series(cavity, z_grid, spec)
    return profile_from_series(z_grid, series, spec.k_cutoff)


def rw_stress(
    cavity: CavitySpec, z: float, spec: Optional[QuadratureSpec] = None
) -> tuple[float, float]:
    """(value, error) of <T_zz^RW(z)> in Pa."""
    profile = rw_profile(cavity, [z], spec)
    return profile.values[0], profile.per_point_error[0]


def rw_pressure(
    cavity: CavitySpec, z: float, spec: Optional[QuadratureSpec] = None
) -> tuple[float, float]:
    """(value, error) of P^RW(z) = -<T_zz^RW(z)>."""
    value, error = rw_stress(cavity, z, spec)
    return -value, error
