"""
Per-(zeta, k_perp) building blocks of the planar cavity formulas: decay
constants, Fresnel coefficients on the imaginary axis, the mode functions
1/d_q and the position kernel chi_q(z).

All functions broadcast over numpy arrays. Scalars in, floats out.
"""

from typing import NamedTuple

import numpy as np

from casimir.errors import DomainError
from materials.constants import CONSTANTS
from materials.permittivity import (
    SINGULARITY_ORDER,
    IdealMetal,
    ZeroFrequencyClass,
    eval_permittivity,
    plasma_static_term,
    static_limit,
)

# e^{-1400} is far below the smallest double
UNDERFLOW_GUARD = 700.0


def _as_output(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def kappa(eps, zeta, k_perp):
    """sqrt(k_perp^2 + eps zeta^2 / c^2)"""
    eps, zeta, k_perp = np.broadcast_arrays(
        np.asarray(eps, dtype=float),
        np.asarray(zeta, dtype=float),
        np.asarray(k_perp, dtype=float),
    )
    if np.any((zeta == 0) & (k_perp == 0)):
        raise DomainError("kappa is zero for zeta = k_perp = 0")
    if np.any(zeta < 0) or np.any(k_perp < 0):
        raise DomainError("zeta and k_perp must be non-negative")
    return _as_output(np.sqrt(k_perp**2 + eps * zeta**2 / CONSTANTS.c**2))


def fresnel(kappa1, kappa2, eps1, eps2):
    """Gap-wall reflection coefficients (r_s, r_p) on the imaginary axis."""
    kappa1 = np.asarray(kappa1, dtype=float)
    kappa2 = np.asarray(kappa2, dtype=float)
    eps1 = np.asarray(eps1, dtype=float)
    eps2 = np.asarray(eps2, dtype=float)
    r_s = (kappa2 - kappa1) / (kappa2 + kappa1)
    r_p = (eps1 * kappa2 - eps2 * kappa1) / (eps1 * kappa2 + eps2 * kappa1)
    return _as_output(r_s), _as_output(r_p)


def mode_sum(r_q, kappa1, a):
    """1/d_q = x / (1 - x) with x = r_q^2 exp(-2 kappa1 a)."""
    r_q = np.asarray(r_q, dtype=float)
    kappa1 = np.asarray(kappa1, dtype=float)
    ka = kappa1 * a
    x = r_q**2 * np.exp(-2.0 * np.minimum(ka, UNDERFLOW_GUARD))
    x = np.where(ka > UNDERFLOW_GUARD, 0.0, x)
    if np.any(x >= 1.0):
        raise DomainError("r_q^2 exp(-2 kappa1 a) >= 1: no bound mode sum")
    return _as_output(x / (1.0 - x))


def chi(r_q, kappa1, a, z):
    """Position kernel r_q e^{-kappa1 a} cosh(2 kappa1 (z - a/2)) / (1 - r_q^2 e^{-2 kappa1 a}).

    Evaluated as r_q / (1 - r_q^2 e^{-2 kappa1 a}) * (e^{-2 kappa1 z} + e^{-2 kappa1 (a - z)}) / 2,
    where every exponent is non-positive.
    """
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0) or np.any(z_arr > a):
        raise DomainError(f"z must lie in [0, a] = [0, {a}], got {z}")
    r_q = np.asarray(r_q, dtype=float)
    kappa1 = np.asarray(kappa1, dtype=float)
    x = r_q**2 * np.exp(-2.0 * kappa1 * a)
    if np.any(x >= 1.0):
        raise DomainError("r_q^2 exp(-2 kappa1 a) >= 1: no bound mode sum")
    envelope = 0.5 * (np.exp(-2.0 * kappa1 * z_arr) + np.exp(-2.0 * kappa1 * (a - z_arr)))
    return _as_output(r_q / (1.0 - x) * envelope)


class MediumSample(NamedTuple):
    """Gap/wall material data at a set of imaginary frequencies.

    w1, w2 are eps_i zeta^2 / c^2 (the static limit is used at zeta = 0),
    ratio is eps1/eps2 and inv_eps1 is 1/eps1, both taken as limits at zeta = 0.
    """

    zeta: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    ratio: np.ndarray
    inv_eps1: np.ndarray
    ideal_wall: bool


def static_permittivity_ratio(gap, wall) -> float:
    """lim zeta->0 of eps_gap / eps_wall from the leading static behaviors."""
    if isinstance(wall, IdealMetal):
        return 0.0
    gap_cls, gap_coef = static_limit(gap)
    wall_cls, wall_coef = static_limit(wall)
    if SINGULARITY_ORDER[gap_cls] < SINGULARITY_ORDER[wall_cls]:
        return 0.0
    if SINGULARITY_ORDER[gap_cls] > SINGULARITY_ORDER[wall_cls]:
        return np.inf
    return gap_coef / wall_coef


def sample_media(wall, gap, zeta) -> MediumSample:
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    static = zeta == 0
    c2 = CONSTANTS.c**2

    with np.errstate(invalid="ignore"):
        eps1 = np.where(static, 1.0, eval_permittivity(gap, zeta))
        w1 = np.where(static, plasma_static_term(gap) / c2, eps1 * zeta**2 / c2)

        gap_cls, gap_coef = static_limit(gap)
        inv_eps1_static = (
            1.0 / gap_coef if gap_cls == ZeroFrequencyClass.FINITE else 0.0
        )
        inv_eps1 = np.where(static, inv_eps1_static, 1.0 / eps1)

        if isinstance(wall, IdealMetal):
            w2 = np.zeros_like(zeta)
            ratio = np.zeros_like(zeta)
        else:
            eps2 = np.where(static, 1.0, eval_permittivity(wall, zeta))
            w2 = np.where(static, plasma_static_term(wall) / c2, eps2 * zeta**2 / c2)
            ratio = np.where(
                static, static_permittivity_ratio(gap, wall), eps1 / eps2
            )

    return MediumSample(
        zeta=zeta,
        w1=w1,
        w2=w2,
        ratio=ratio,
        inv_eps1=inv_eps1,
        ideal_wall=isinstance(wall, IdealMetal),
    )


def reflection_from_k2(media: MediumSample, k2):
    """(r_s, r_p, kappa1) for squared transverse wavenumbers k2.

    k2 broadcasts against the frequency axis of `media` (leading axis).
    """
    k2 = np.asarray(k2, dtype=float)
    kappa1 = np.sqrt(k2 + media.w1)
    if media.ideal_wall:
        ones = np.ones_like(kappa1)
        return ones, -ones, kappa1

    kappa2 = np.sqrt(k2 + media.w2)
    r_s = (kappa2 - kappa1) / (kappa2 + kappa1)
    ratio = media.ratio
    with np.errstate(invalid="ignore", divide="ignore"):
        r_p = np.where(
            np.isinf(ratio),
            1.0,
            (ratio * kappa2 - kappa1) / (ratio * kappa2 + kappa1),
        )
    return r_s, r_p, kappa1


def reflection(wall, gap, zeta, k_perp):
    """(r_s, r_p) of the gap-wall interface at zeta > 0 (any wall, including ideal metal)."""
    zeta, k_perp = np.broadcast_arrays(
        np.asarray(zeta, dtype=float), np.asarray(k_perp, dtype=float)
    )
    if np.any(zeta <= 0):
        raise DomainError("reflection needs zeta > 0; use static_reflection for zeta = 0")
    media = sample_media(wall, gap, zeta.ravel())
    r_s, r_p, _ = reflection_from_k2(media, k_perp.ravel() ** 2)
    return _as_output(r_s.reshape(zeta.shape)), _as_output(r_p.reshape(zeta.shape))


def static_reflection(wall, gap, k_perp):
    """(r_s, r_p) in the zero-frequency limit, selected by each medium's static class.

    Drude-like and finite walls give r_s(0) = 0; plasma-like walls keep the
    penetration depth c/omega_p in r_s. r_p(0) follows from lim eps1/eps2.
    """
    k_perp = np.asarray(k_perp, dtype=float)
    if np.any(k_perp <= 0):
        raise DomainError("static reflection needs k_perp > 0")
    media = sample_media(wall, gap, np.zeros(1))
    r_s, r_p, _ = reflection_from_k2(media, k_perp.ravel() ** 2)
    return _as_output(r_s.reshape(k_perp.shape)), _as_output(r_p.reshape(k_perp.shape))


def tail_reflection(wall, gap, zeta):
    """k_perp -> infinity limits at zeta > 0: r_s -> 0, r_p -> (eps1 - eps2)/(eps1 + eps2)."""
    zeta = np.asarray(zeta, dtype=float)
    if isinstance(wall, IdealMetal):
        return _as_output(np.ones_like(zeta)), _as_output(-np.ones_like(zeta))
    eps1 = np.asarray(eval_permittivity(gap, zeta))
    eps2 = np.asarray(eval_permittivity(wall, zeta))
    return _as_output(np.zeros_like(zeta)), _as_output((eps1 - eps2) / (eps1 + eps2))
