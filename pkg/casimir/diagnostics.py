"""
Diagnostics of the RW interface divergence: the linear growth of P^RW with
the transverse cutoff at the interface, and the 1/z growth of the
z-dependent stress towards it.

Both laws hold term by term in the Matsubara sum, and only for frequencies
whose gap wavenumber sqrt(eps1) zeta_m / c is small against the scale that
is resolved: the smallest cutoff, or 1/(2 z) at the largest distance. The
diagnostics therefore sum over the frequencies inside that window, with a
margin of ASYMPTOTIC_MARGIN. Frequencies above it are damped at these
scales and carry no divergent part.
"""

import logging
import math
import warnings
from typing import Optional, Sequence

import numpy as np
from scipy.stats import linregress

from casimir.errors import DomainError, MatsubaraWindowWarning
from casimir.planar_kernels import tail_reflection
from casimir.rw import CHI_START, FIRST, MODE, rw_series
from casimir.spectral_engine import (
    ConvergenceReport,
    QuadratureSpec,
    SeriesResult,
    block_schedule,
    matsubara_frequency,
    matsubara_sum,
)
from materials.constants import CONSTANTS
from materials.permittivity import eval_permittivity
from schema.cavity import CavitySpec
from schema.results import CutoffScanResult, GrowthResult

logger = logging.getLogger(__name__)

MIN_CUTOFFS = 4
INSENSITIVE_FRACTION = 1e-2
# gap wavenumber <= resolved scale / ASYMPTOTIC_MARGIN
ASYMPTOTIC_MARGIN = 10.0
MIN_CORRELATION = 0.9999
SLOPE_TOLERANCE = 1e-2


def gap_wavenumber(cavity: CavitySpec, m) -> np.ndarray:
    """sqrt(eps1(zeta_m)) zeta_m / c (1/m), increasing in m for every gap model."""
    zeta = matsubara_frequency(np.asarray(m), cavity.T)
    return np.sqrt(eval_permittivity(cavity.gap, zeta)) * zeta / CONSTANTS.c


def asymptotic_terms(cavity: CavitySpec, k_limit: float, max_terms: int) -> int:
    """Number of leading Matsubara terms 0..n-1 with gap wavenumber <= k_limit.

    m = 0 always qualifies; the count is capped at max_terms.
    """
    if cavity.T <= 0:
        raise DomainError("interface diagnostics need T > 0")
    for indices in block_schedule(1, max_terms):
        outside = np.flatnonzero(gap_wavenumber(cavity, indices) > k_limit)
        if outside.size:
            return int(indices[outside[0]])
    return max_terms


def _converged_window(
    cavity: CavitySpec, z: Sequence[float], spec: QuadratureSpec
) -> tuple[int, bool]:
    """Terms the adaptive RW series needs at z, and whether it hit max_matsubara_terms."""
    series = rw_series(cavity, z, spec)
    if series.report.converged:
        return series.report.matsubara_terms_used, False
    warnings.warn(
        f"RW series did not converge within {spec.max_matsubara_terms} Matsubara terms; "
        f"the diagnostic uses the first {spec.max_matsubara_terms} frequencies",
        MatsubaraWindowWarning,
        stacklevel=3,
    )
    return spec.max_matsubara_terms, True


def _window_truncates(cavity: CavitySpec, spec: QuadratureSpec, terms: int) -> bool:
    """Whether frequencies beyond the first `terms` carry a significant interface tail."""
    full = interface_tail_constant(cavity, spec)
    if not full.report.converged:
        return True
    windowed = float(interface_tail_constant(cavity, spec, terms).value)
    total = float(full.value)
    return abs(total - windowed) > spec.rel_tol * abs(total) + spec.abs_tol


def interface_tail_constant(
    cavity: CavitySpec, spec: Optional[QuadratureSpec] = None, terms: Optional[int] = None
) -> SeriesResult:
    """dP^RW/dcutoff at an interface for a large cutoff (Pa m).

    (kB T / pi) sum'_m A_m (r_s,inf - r_p,inf) / 2 with A_m = (eps1 - 1) zeta_m^2 / (2 c^2),
    r_s,inf = 0 and r_p,inf = (eps1 - eps2)/(eps1 + eps2) at zeta_m. With `terms` the
    sum runs over exactly the first `terms` frequencies, otherwise it is adaptive.
    """
    spec = spec or QuadratureSpec()
    gap = cavity.gap
    weight = CONSTANTS.kB * cavity.T / math.pi

    def term(m):
        m = np.asarray(m)
        values = np.zeros(m.shape, dtype=float)
        positive = m > 0
        if np.any(positive):
            zeta = matsubara_frequency(m[positive], cavity.T)
            eps1 = eval_permittivity(gap, zeta)
            r_s, r_p = tail_reflection(cavity.wall, gap, zeta)
            amplitude = (eps1 - 1.0) * zeta**2 / (2.0 * CONSTANTS.c**2)
            values[positive] = weight * amplitude * (r_s - r_p) / 2.0
        return values

    return matsubara_sum(term, spec, fixed_terms=terms)


def _combine_reports(reports: list[ConvergenceReport], terms: int) -> ConvergenceReport:
    return ConvergenceReport(
        matsubara_terms_used=terms,
        tail_estimate=max(r.tail_estimate for r in reports),
        total_function_evals=sum(r.total_function_evals for r in reports),
        converged=all(r.converged for r in reports),
    )


def _interface_window(
    cavity: CavitySpec, z: float, cutoffs: np.ndarray, spec: QuadratureSpec
) -> tuple[int, bool]:
    window = asymptotic_terms(
        cavity, float(cutoffs[0]) / ASYMPTOTIC_MARGIN, spec.max_matsubara_terms
    )
    if not _window_truncates(cavity, spec, window):
        top_spec = spec.model_copy(update={"k_cutoff": float(cutoffs[-1])})
        return _converged_window(cavity, [z], top_spec)
    if window < 2:
        smallest = ASYMPTOTIC_MARGIN * float(gap_wavenumber(cavity, 1))
        raise DomainError(
            f"the smallest cutoff must be >= {ASYMPTOTIC_MARGIN:g} sqrt(eps1) zeta_1 / c "
            f"= {smallest:.3e} 1/m for the interface slope to be linear"
        )
    warnings.warn(
        f"cutoff scan restricted to the first {window} Matsubara frequencies, where "
        f"sqrt(eps1) zeta / c <= smallest cutoff / {ASYMPTOTIC_MARGIN:g}; higher "
        f"frequencies have not reached the large-cutoff regime",
        MatsubaraWindowWarning,
        stacklevel=3,
    )
    return window, True


def cutoff_scan(
    cavity: CavitySpec,
    z: float,
    cutoffs: Sequence[float],
    spec: Optional[QuadratureSpec] = None,
) -> CutoffScanResult:
    """P^RW(z) = -<T_zz^RW(z)> for each transverse cutoff, with a line c0 + c1 cutoff
    fitted over the top decade.

    At an interface the fitted slope is checked against the analytic tail
    constant on the same frequencies; a correlation below MIN_CORRELATION
    or a deviation above SLOPE_TOLERANCE clears `asymptotic` and marks the
    report unconverged. When the window excludes frequencies, c0 covers only
    the windowed ones.
    """
    spec = spec or QuadratureSpec()
    cutoffs = np.asarray(cutoffs, dtype=float)
    a = cavity.a
    if cutoffs.size < MIN_CUTOFFS:
        raise DomainError(f"cutoff_scan needs at least {MIN_CUTOFFS} cutoffs, got {cutoffs.size}")
    if np.any(np.diff(cutoffs) <= 0):
        raise DomainError("cutoffs must be strictly increasing")
    if cutoffs[0] < 10.0 / a:
        raise DomainError(f"cutoffs must be >= 10/a = {10.0 / a:.3e} 1/m")
    if not 0.0 <= z <= a:
        raise DomainError(f"z must lie in [0, {a}] m")

    at_interface = z == 0.0 or z == a
    if at_interface:
        terms, truncated = _interface_window(cavity, z, cutoffs, spec)
    else:
        top_spec = spec.model_copy(update={"k_cutoff": float(cutoffs[-1])})
        terms, truncated = _converged_window(cavity, [z], top_spec)

    values, errors, reports = [], [], []
    for cutoff in cutoffs:
        run_spec = spec.model_copy(update={"k_cutoff": float(cutoff)})
        series = rw_series(cavity, [z], run_spec, fixed_terms=terms)
        columns = np.asarray(series.value)
        stress = columns[FIRST] + columns[MODE] + columns[CHI_START]
        values.append(-float(stress))
        errors.append(series.error)
        reports.append(series.report)
        logger.debug("cutoff %.3e -> P_RW %.6e", cutoff, values[-1])

    top_decade = cutoffs >= cutoffs[-1] / 10.0
    if np.count_nonzero(top_decade) < MIN_CUTOFFS:
        top_decade = np.zeros_like(top_decade)
        top_decade[-MIN_CUTOFFS:] = True
    fit = linregress(cutoffs[top_decade], np.asarray(values)[top_decade])
    slope, intercept = float(fit.slope), float(fit.intercept)

    analytic = (
        float(interface_tail_constant(cavity, spec, terms).value) if at_interface else 0.0
    )
    deviation = abs(slope - analytic) / abs(analytic) if analytic != 0.0 else None
    correlation = float(fit.rvalue)
    if math.isnan(correlation):
        correlation = 0.0

    report = _combine_reports(reports, terms)
    asymptotic = None
    if deviation is not None:
        asymptotic = correlation > MIN_CORRELATION and deviation < SLOPE_TOLERANCE
        if not asymptotic:
            logger.warning(
                "Interface slope %.6e is not linear in the cutoff (r=%.6f, deviation %.3e)",
                slope,
                correlation,
                deviation,
            )
            report = report.model_copy(update={"converged": False})

    return CutoffScanResult(
        z=z,
        cutoffs=cutoffs.tolist(),
        values=values,
        errors=errors,
        fitted_intercept=intercept,
        fitted_slope=slope,
        slope_stderr=float(fit.stderr),
        correlation=correlation,
        analytic_slope=analytic,
        relative_deviation=deviation,
        cutoff_insensitive=bool(abs(slope * cutoffs[-1]) < INSENSITIVE_FRACTION * abs(intercept)),
        asymptotic=asymptotic,
        matsubara_terms=terms,
        matsubara_window_truncated=truncated,
        report=report,
    )


def near_interface_growth(
    cavity: CavitySpec,
    z_values: Sequence[float],
    spec: Optional[QuadratureSpec] = None,
) -> GrowthResult:
    """Log-log slope of the z-dependent RW stress versus distance from the wall.

    The slope is -1 over the frequencies with 2 sqrt(eps1) zeta z / c <= 1 / ASYMPTOTIC_MARGIN
    at the largest z; the fit sums exactly those (at least m = 0 and 1). `asymptotic`
    is False when even zeta_1 falls outside that range.
    """
    spec = spec or QuadratureSpec()
    if spec.k_cutoff is not None:
        spec = spec.model_copy(update={"k_cutoff": None})
    z = np.asarray(z_values, dtype=float)
    a = cavity.a
    if z.size < 2:
        raise DomainError("near_interface_growth needs at least two z values")
    if np.any(z <= 0) or np.any(z > a / 10.0):
        raise DomainError(f"z values must lie in (0, a/10] = (0, {a / 10.0:.3e}] m")

    z_max = float(z.max())
    window = asymptotic_terms(
        cavity, 1.0 / (2.0 * ASYMPTOTIC_MARGIN * z_max), max(spec.max_matsubara_terms, 2)
    )
    asymptotic = window >= 2
    terms = max(window, 2)
    truncated = _window_truncates(cavity, spec, terms)
    if not asymptotic:
        warnings.warn(
            f"z up to {z_max:.3e} m lies outside the small-distance range of the first "
            f"Matsubara frequency (2 sqrt(eps1) zeta_1 z / c > {1.0 / ASYMPTOTIC_MARGIN:g}); "
            f"the exponent is not expected to be -1",
            MatsubaraWindowWarning,
            stacklevel=2,
        )
    elif truncated:
        warnings.warn(
            f"near-interface fit restricted to the first {terms} Matsubara frequencies, where "
            f"2 sqrt(eps1) zeta z / c <= {1.0 / ASYMPTOTIC_MARGIN:g} at z = {z_max:.3e} m; "
            f"higher frequencies are damped at these distances and do not grow as 1/z",
            MatsubaraWindowWarning,
            stacklevel=2,
        )

    series = rw_series(cavity, z, spec, fixed_terms=terms)
    chi_part = np.asarray(series.value)[CHI_START:]

    if np.all(chi_part == 0.0):
        return GrowthResult(
            z=z.tolist(),
            values=chi_part.tolist(),
            has_divergent_part=False,
            message="no divergent part",
            matsubara_terms=terms,
            matsubara_window_truncated=truncated,
            report=series.report,
        )

    fit = linregress(np.log(z), np.log(np.abs(chi_part)))
    return GrowthResult(
        z=z.tolist(),
        values=chi_part.tolist(),
        exponent=float(fit.slope),
        exponent_stderr=float(fit.stderr),
        has_divergent_part=True,
        asymptotic=asymptotic,
        message=f"z-dependent stress grows as z^{fit.slope:.3f}",
        matsubara_terms=terms,
        matsubara_window_truncated=truncated,
        report=series.report,
    )
