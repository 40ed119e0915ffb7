"""
Abraham-Minkowski (Lifshitz) Casimir pressure of the symmetric planar cavity.

Per frequency the transverse integral is taken in y = 2 a kappa1, where
k dk = kappa1 dkappa1 turns  int dk k kappa1 f  into  (2a)^-3 int dy y^2 f.
The AM stress is uniform in the gap and zero outside, so nothing here takes
a position argument.
"""

import math
import warnings
from enum import Enum
from typing import Optional

import numpy as np

from casimir.errors import CutoffWarning
from casimir.planar_kernels import mode_sum, reflection_from_k2, sample_media
from casimir.spectral_engine import (
    ConvergenceReport,
    QuadratureSpec,
    TermBlock,
    geometric_breakpoints,
    integrate_kperp,
    matsubara_frequency,
    matsubara_sum,
    zero_temperature_integral,
)
from materials.constants import CONSTANTS
from materials.permittivity import ConstantPermittivity, IdealMetal
from schema.cavity import CavitySpec
from schema.results import PressureResult


class InterfaceSide(str, Enum):
    LEFT = "left_interface"
    RIGHT = "right_interface"


def ideal_mirror_pressure(a: float) -> float:
    """-pi^2 hbar c / (240 a^4)"""
    return -(math.pi**2) * CONSTANTS.hbar * CONSTANTS.c / (240.0 * a**4)


def transverse_cutoff_span(media, a: float, k_cutoff: Optional[float]):
    """Upper limit of u = y - y0 for a transverse cutoff (None when infinite)."""
    if k_cutoff is None:
        return None
    return 2.0 * a * (np.sqrt(k_cutoff**2 + media.w1) - np.sqrt(media.w1))


def am_term_block(
    cavity: CavitySpec, zeta: np.ndarray, spec: QuadratureSpec, weight: float
) -> TermBlock:
    """TE and TM contributions -weight/pi * int dk k kappa1 / d_q for each frequency.

    Rows follow `zeta`; columns are (te, tm).
    """
    a = cavity.a
    media = sample_media(cavity.wall, cavity.gap, zeta)
    y0 = 2.0 * a * np.sqrt(media.w1)
    cutoff = spec.k_cutoff if spec.force_cutoff else None
    prefactor = -weight / math.pi / (2.0 * a) ** 3

    def integrand(u):
        y = y0 + u
        k2 = u * (u + 2.0 * y0) / (2.0 * a) ** 2
        r_s, r_p, kappa1 = reflection_from_k2(media, k2)
        return (prefactor * y**2)[:, None] * np.stack(
            [mode_sum(r_s, kappa1, a), mode_sum(r_p, kappa1, a)], axis=-1
        )

    result = integrate_kperp(
        integrand,
        k_cutoff=transverse_cutoff_span(media, a, cutoff),
        spec=spec,
        breakpoints=geometric_breakpoints(64.0),
    )
    return TermBlock(
        values=np.asarray(result.value),
        error=result.error,
        evaluations=result.evaluations,
        converged=result.converged,
    )


def am_pressure(cavity: CavitySpec, spec: Optional[QuadratureSpec] = None) -> PressureResult:
    """P = -(kB T / pi) sum'_m int dk k kappa1 sum_q 1/d_q  (negative = attraction).

    T = 0 replaces kB T sum'_m by (hbar / 2 pi) int dzeta.
    """
    spec = spec or QuadratureSpec()

    if cavity.identical_media:
        return PressureResult(
            pressure=0.0, te_part=0.0, tm_part=0.0, error=0.0, report=ConvergenceReport()
        )

    if spec.k_cutoff is not None and not spec.force_cutoff:
        warnings.warn(
            "AM pressure ignores the transverse cutoff; set force_cutoff to apply it",
            CutoffWarning,
            stacklevel=2,
        )

    if cavity.T > 0:
        weight = CONSTANTS.kB * cavity.T

        def term(m):
            zeta = matsubara_frequency(m, cavity.T)
            return am_term_block(cavity, zeta, spec, weight)

        series = matsubara_sum(term, spec)
        parts = np.asarray(series.value)
        error = series.error
        report = series.report
    else:
        result = zero_temperature_integral(
            lambda zeta: am_term_block(cavity, zeta, spec, 1.0),
            spec,
            scale=CONSTANTS.c / (2.0 * cavity.a),
        )
        parts = np.asarray(result.value)
        error = result.error
        report = ConvergenceReport(
            matsubara_terms_used=0,
            tail_estimate=0.0,
            total_function_evals=result.evaluations,
            converged=result.converged,
        )

    te_part, tm_part = float(parts[0]), float(parts[1])
    return PressureResult(
        pressure=te_part + tm_part,
        te_part=te_part,
        tm_part=tm_part,
        error=error,
        report=report,
    )


def am_stress_difference(
    side: InterfaceSide, cavity: CavitySpec, spec: Optional[QuadratureSpec] = None
) -> float:
    """<T_zz> just left of the interface minus just right of it (Pa).

    The AM stress vanishes outside the gap and is -P inside, so the left
    interface gives P and the right interface gives -P.
    """
    pressure = am_pressure(cavity, spec).pressure
    if InterfaceSide(side) == InterfaceSide.LEFT:
        return pressure
    return -pressure


def ideal_metal_limit(a: float, T: float, spec: Optional[QuadratureSpec] = None) -> float:
    """AM pressure between perfect mirrors across vacuum (r_s = 1, r_p = -1)."""
    cavity = CavitySpec(a=a, T=T, wall=IdealMetal(), gap=ConstantPermittivity(eps=1.0))
    return am_pressure(cavity, spec).pressure
