"""
Matsubara frequencies, the mapped semi-infinite transverse quadrature and the
truncated Matsubara series shared by the AM and RW stress calculations.

Terms for many Matsubara indices are evaluated together: a term function
receives an integer index array and returns one row per index. Blocks have a
fixed size sequence so that results do not depend on the number of workers.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, NamedTuple, Optional, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    PositiveInt,
)
from scipy.integrate import quad_vec

from casimir.errors import DomainError
from materials.constants import CONSTANTS

logger = logging.getLogger(__name__)

GK21_NODES = 21
CONSECUTIVE_SMALL_TERMS = 3
FIRST_BLOCK = 16
MAX_BLOCK = 1024


class QuadratureSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    rel_tol: PositiveFloat = 1e-8
    abs_tol: NonNegativeFloat = 1e-20  # Pa
    max_matsubara_terms: PositiveInt = 100_000
    k_cutoff: Optional[PositiveFloat] = None  # 1/m, None = infinite
    max_quadrature_evals_per_term: int = Field(default=10_000, ge=GK21_NODES)
    workers: PositiveInt = 1
    # AM pressures ignore k_cutoff unless this is set
    force_cutoff: bool = False


class ConvergenceReport(BaseModel):
    matsubara_terms_used: int = 0
    tail_estimate: float = 0.0
    total_function_evals: int = 0
    converged: bool = True


class QuadratureResult(NamedTuple):
    value: Union[float, np.ndarray]
    error: float
    evaluations: int
    converged: bool


class TermBlock(NamedTuple):
    """Values of a term function for a block of indices (leading axis)."""

    values: np.ndarray
    error: float = 0.0
    evaluations: int = 0
    converged: bool = True


class SeriesResult(NamedTuple):
    value: Union[float, np.ndarray]
    error: float
    report: ConvergenceReport
    # term(0) before the half weight
    zero_term: Union[float, np.ndarray]


def matsubara_frequency(m, T: float):
    """zeta_m = 2 pi kB T m / hbar (rad/s). Scalar or array m."""
    if T <= 0:
        raise DomainError(
            f"Matsubara frequencies need T > 0, got T={T}; use the zero-temperature integral"
        )
    m_arr = np.asarray(m)
    if np.any(m_arr < 0):
        raise DomainError(f"Matsubara index must be >= 0, got {m}")
    zeta = 2.0 * math.pi * CONSTANTS.kB * T / CONSTANTS.hbar * m_arr
    if zeta.ndim == 0:
        return float(zeta)
    return zeta


def _quad_limit(spec: QuadratureSpec) -> int:
    return max(1, spec.max_quadrature_evals_per_term // GK21_NODES)


def geometric_breakpoints(top: float, scale: float = 1.0) -> list[float]:
    """Points 1, 4, 16, ... (times scale) up to `top`; initial panel edges for the mapped quadrature."""
    points = []
    k = scale
    while k < top:
        points.append(k)
        k *= 4.0
    return points


def integrate_kperp(
    integrand: Callable,
    k_min: float = 0.0,
    k_cutoff=None,
    *,
    scale: float = 1.0,
    spec: Optional[QuadratureSpec] = None,
    breakpoints: Optional[list[float]] = None,
) -> QuadratureResult:
    """Integrate `integrand(k)` over k in [k_min, k_cutoff] (or [k_min, inf)).

    The interval is mapped onto t in [0, 1] by k = k_min + scale tau t / (1 - tau t),
    with tau = 1 for an infinite cutoff and tau chosen so that t = 1 lands on the
    cutoff otherwise. `k_cutoff` may be an array; the integrand then receives k
    with that shape and the leading axes of its output must match it.
    Adaptive GK21 panels (scipy quad_vec) with the max-norm error test.
    """
    spec = spec or QuadratureSpec()

    if k_cutoff is None:
        tau = 1.0
    else:
        span = np.asarray(k_cutoff, dtype=float) - k_min
        if np.any(span <= 0):
            raise DomainError("k_cutoff must exceed k_min")
        tau = span / (scale + span)
    tau_arr = np.asarray(tau, dtype=float)

    def mapped(t):
        denom = 1.0 - tau_arr * t
        k = k_min + scale * tau_arr * t / denom
        jac = scale * tau_arr / denom**2
        out = np.asarray(integrand(k), dtype=float)
        if jac.ndim:
            jac = jac.reshape(jac.shape + (1,) * (out.ndim - jac.ndim))
        # both factors blow up only where the integrand has already decayed to 0
        return np.where(out == 0.0, 0.0, out * jac)

    points = None
    if breakpoints:
        tau_ref = float(np.max(tau_arr))
        ts = sorted(
            {
                (k - k_min) / (tau_ref * (scale + k - k_min))
                for k in breakpoints
                if k > k_min
            }
        )
        points = [t for t in ts if 0.0 < t < 1.0] or None

    with np.errstate(over="ignore", invalid="ignore"):
        value, error, info = quad_vec(
            mapped,
            0.0,
            1.0,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            norm="max",
            limit=_quad_limit(spec),
            points=points,
            full_output=True,
        )

    if not info.success:
        logger.debug("quad_vec stopped with status %s after %s evals", info.status, info.neval)

    if np.ndim(value) == 0:
        value = float(value)
    return QuadratureResult(value, float(error), int(info.neval), bool(info.success))


def _as_block(result) -> TermBlock:
    if isinstance(result, TermBlock):
        return result._replace(values=np.asarray(result.values, dtype=float))
    return TermBlock(values=np.asarray(result, dtype=float))


def _term_norms(values: np.ndarray) -> np.ndarray:
    flat = np.abs(values.reshape(values.shape[0], -1))
    return flat.max(axis=1) if flat.shape[1] else np.zeros(values.shape[0])


def block_schedule(start: int, stop: int):
    """Fixed block partition of [start, stop): sizes 16, 16, 32, 64, ... capped at 1024."""
    size = FIRST_BLOCK
    lo = start
    first = True
    while lo < stop:
        hi = min(lo + size, stop)
        yield np.arange(lo, hi)
        lo = hi
        if not first:
            size = min(2 * size, MAX_BLOCK)
        first = False


def matsubara_sum(
    term: Callable,
    spec: Optional[QuadratureSpec] = None,
    *,
    fixed_terms: Optional[int] = None,
) -> SeriesResult:
    """Half-weighted series term(0)/2 + sum_{m>=1} term(m).

    `term` receives an integer index array and returns an array of shape
    (len(m), ...) or a TermBlock. Truncation stops after three consecutive
    terms below rel_tol |partial| + abs_tol once a geometric tail estimate
    is below the same threshold. With `fixed_terms` exactly indices
    0 .. fixed_terms - 1 are summed.
    """
    spec = spec or QuadratureSpec()
    max_terms = fixed_terms if fixed_terms is not None else spec.max_matsubara_terms
    if max_terms < 1:
        raise DomainError("at least one Matsubara term is required")

    first = _as_block(term(np.array([0])))
    zero_term = first.values[0]
    partial = 0.5 * zero_term
    error = first.error
    evaluations = first.evaluations
    converged = first.converged
    used = 1

    small_run = 0
    last_norm = float(np.max(np.abs(zero_term))) if np.size(zero_term) else 0.0
    tail = math.inf
    done = fixed_terms is not None and max_terms == 1

    blocks = block_schedule(1, max_terms)
    executor = ThreadPoolExecutor(spec.workers) if spec.workers > 1 else None
    try:
        while not done:
            wave = [b for _, b in zip(range(spec.workers), blocks)]
            if not wave:
                break
            if executor is not None:
                results = list(executor.map(lambda idx: _as_block(term(idx)), wave))
            else:
                results = [_as_block(term(idx)) for idx in wave]

            for indices, block in zip(wave, results):
                logger.debug("Matsubara block %d..%d", indices[0], indices[-1])
                error += block.error
                evaluations += block.evaluations
                converged = converged and block.converged

                cumulative = partial + np.cumsum(block.values, axis=0)
                norms = _term_norms(block.values)

                stop_at = None
                if fixed_terms is None:
                    for i in range(len(indices)):
                        threshold = spec.rel_tol * float(
                            np.max(np.abs(cumulative[i]))
                        ) + spec.abs_tol
                        if norms[i] <= threshold:
                            small_run += 1
                        else:
                            small_run = 0
                        if last_norm > 0 and norms[i] < last_norm:
                            ratio = norms[i] / last_norm
                            tail = norms[i] * ratio / (1.0 - ratio)
                        elif norms[i] == 0:
                            tail = 0.0
                        else:
                            tail = math.inf
                        last_norm = norms[i]
                        if small_run >= CONSECUTIVE_SMALL_TERMS and tail <= threshold:
                            stop_at = i
                            break

                if stop_at is None:
                    partial = cumulative[-1]
                    used += len(indices)
                else:
                    partial = cumulative[stop_at]
                    used += stop_at + 1
                    done = True
                    break
    finally:
        if executor is not None:
            executor.shutdown()

    if fixed_terms is not None:
        tail = 0.0
        series_converged = True
    else:
        series_converged = done
        if not done:
            tail = 0.0 if math.isinf(tail) and last_norm == 0 else tail
            logger.debug("Matsubara series not converged after %d terms", used)

    report = ConvergenceReport(
        matsubara_terms_used=used,
        tail_estimate=float(tail) if math.isfinite(tail) else float("inf"),
        total_function_evals=evaluations,
        converged=series_converged and converged,
    )
    value = partial
    if np.ndim(value) == 0:
        value = float(value)
        zero_term = float(zero_term)
    total_error = error + (report.tail_estimate if math.isfinite(report.tail_estimate) else 0.0)
    return SeriesResult(value, float(total_error), report, zero_term)


def zero_temperature_integral(
    term: Callable,
    spec: Optional[QuadratureSpec] = None,
    *,
    scale: float = 1.0,
) -> QuadratureResult:
    """(hbar / 2 pi) * integral_0^inf dzeta term(zeta).

    `term` receives a one-element frequency array and returns a one-row array
    or a TermBlock, like the Matsubara term functions. `scale` (rad/s) sets
    the mapping zeta = scale t / (1 - t).
    """
    spec = spec or QuadratureSpec()
    inner_evals = []
    inner_converged = []

    def integrand(zeta):
        block = _as_block(term(np.atleast_1d(zeta)))
        inner_evals.append(block.evaluations)
        inner_converged.append(block.converged)
        return block.values[0]

    result = integrate_kperp(
        integrand,
        scale=scale,
        spec=spec,
        breakpoints=geometric_breakpoints(64.0 * scale, scale),
    )
    prefactor = CONSTANTS.hbar / (2.0 * math.pi)
    return QuadratureResult(
        value=prefactor * result.value,
        error=prefactor * result.error,
        evaluations=result.evaluations + sum(inner_evals),
        converged=result.converged and all(inner_converged),
    )
