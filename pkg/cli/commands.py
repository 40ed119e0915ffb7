"""
Subcommand implementations. Each takes a RunConfig and returns a
CommandOutput; rendering, caching and exit codes live in cli.main.
"""

import sys
import warnings

import numpy as np

from casimir.am import am_pressure, ideal_mirror_pressure
from casimir.diagnostics import cutoff_scan, near_interface_growth
from casimir.rw import rw_profile
from classical.field_io import load_field_state
from classical.fields import (
    VERTICAL,
    LiquidRiseSpec,
    StressTensorKind,
    condenser_regions,
    force_density,
    liquid_rise_height,
    permittivity_ramp_state,
    surface_stress_jump,
)
from cli.config import RunConfig, resolve_grid
from cli.csv_output import CommandOutput

FLATNESS_TOLERANCE = 1e-12


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def _collect_warnings(caught) -> list[str]:
    notes = []
    for w in caught:
        note = f"{w.category.__name__}: {w.message}"
        if note not in notes:
            notes.append(note)
    return notes


def cmd_pressure(config: RunConfig, workers: int = 1) -> CommandOutput:
    section = config.section("pressure")
    spec = config.quadrature_for(section, workers)
    rows = []
    converged = True
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for a in resolve_grid(section.a):
            for T in resolve_grid(section.T):
                _status(f"🔄 AM pressure a={a:.3e} m, T={T:g} K")
                result = am_pressure(config.cavity(section, a, T), spec)
                converged = converged and result.report.converged
                rows.append(
                    [a, T, result.pressure, result.error, result.te_part, result.tm_part]
                )
    return CommandOutput(
        command="pressure",
        config_json=config.resolved_json("pressure"),
        columns=["a", "T", "P_AM", "error", "te_part", "tm_part"],
        rows=rows,
        notes=_collect_warnings(caught),
        converged=converged,
    )


def _symmetry_residual(z: np.ndarray, values: np.ndarray, a: float):
    """max |T(z) - T(a - z)| / max |T| over mirrored grid pairs, None if the grid is not symmetric."""
    mirrored = a - z[::-1]
    if not np.allclose(z, mirrored, rtol=0.0, atol=1e-9 * a):
        return None
    scale = np.max(np.abs(values))
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(values - values[::-1])) / scale)


def cmd_rw_profile(config: RunConfig, workers: int = 1) -> CommandOutput:
    section = config.section("rw_profile")
    spec = config.quadrature_for(section, workers)
    z = resolve_grid(section.z)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cavity = config.cavity(section, section.a, section.T)
        _status(f"🔄 RW profile on {len(z)} points, a={section.a:.3e} m, T={section.T:g} K")
        profile = rw_profile(cavity, z, spec)
        am = am_pressure(cavity, spec)

    values = np.asarray(profile.values)
    spread = float(np.max(values) - np.min(values))
    flat = spread <= max(10.0 * profile.per_point_error[0], FLATNESS_TOLERANCE * np.max(np.abs(values)))
    rows = [[zi, vi, ei] for zi, vi, ei in zip(z, profile.values, profile.per_point_error)]
    return CommandOutput(
        command="rw-profile",
        config_json=config.resolved_json("rw_profile"),
        columns=["z", "T_zz_RW", "error"],
        rows=rows,
        summary={
            "symmetry_residual": _symmetry_residual(np.asarray(z), values, section.a),
            "flat": bool(flat),
            "am_pressure": am.pressure,
            "matsubara_terms": profile.report.matsubara_terms_used,
        },
        notes=_collect_warnings(caught),
        converged=profile.report.converged and am.report.converged,
    )


def cmd_cutoff_scan(config: RunConfig, workers: int = 1) -> CommandOutput:
    section = config.section("cutoff_scan")
    spec = config.quadrature_for(section, workers)
    cutoffs = resolve_grid(section.cutoffs)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cavity = config.cavity(section, section.a, section.T)
        _status(f"🔄 Cutoff scan at z={section.z:.3e} m over {len(cutoffs)} cutoffs")
        scan = cutoff_scan(cavity, section.z, cutoffs, spec)

    return CommandOutput(
        command="cutoff-scan",
        config_json=config.resolved_json("cutoff_scan"),
        columns=["cutoff", "P_RW", "error"],
        rows=[[c, v, e] for c, v, e in zip(scan.cutoffs, scan.values, scan.errors)],
        summary={
            "c0": scan.fitted_intercept,
            "c1": scan.fitted_slope,
            "stderr": scan.slope_stderr,
            "correlation": scan.correlation,
            "analytic_slope": scan.analytic_slope,
            "relative_deviation": scan.relative_deviation,
            "cutoff_insensitive": scan.cutoff_insensitive,
            "asymptotic": scan.asymptotic,
            "matsubara_terms": scan.matsubara_terms,
            "matsubara_window_truncated": scan.matsubara_window_truncated,
        },
        notes=_collect_warnings(caught),
        converged=scan.report.converged,
    )


def cmd_near_interface(config: RunConfig, workers: int = 1) -> CommandOutput:
    section = config.section("near_interface")
    spec = config.quadrature_for(section, workers)
    z = resolve_grid(section.z)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cavity = config.cavity(section, section.a, section.T)
        _status(f"🔄 Near-interface growth over {len(z)} distances")
        growth = near_interface_growth(cavity, z, spec)

    return CommandOutput(
        command="near-interface",
        config_json=config.resolved_json("near_interface"),
        columns=["z", "chi_part"],
        rows=[[zi, vi] for zi, vi in zip(growth.z, growth.values)],
        summary={
            "exponent": growth.exponent,
            "stderr": growth.exponent_stderr,
            "message": growth.message,
            "asymptotic": growth.asymptotic,
            "matsubara_terms": growth.matsubara_terms,
            "matsubara_window_truncated": growth.matsubara_window_truncated,
        },
        notes=_collect_warnings(caught),
        converged=growth.report.converged,
    )


def _liquid_spec(section) -> LiquidRiseSpec:
    return LiquidRiseSpec(eps=section.eps, E=section.E, rho_mass=section.rho_mass, g=section.g)


def _write_force_density(section, path: str) -> None:
    if section.field_state:
        state = load_field_state(section.field_state)
    else:
        height = section.ramp_height
        bottom, top = section.eps, 1.0
        n = section.ramp_cells
        dz = height / (n - 1)
        state = permittivity_ramp_state(
            lambda z: bottom + (top - bottom) * z / height,
            section.E,
            (3, 3, n),
            (dz, dz, dz),
        )
    f_am = force_density(StressTensorKind.AM, state)
    f_rw = force_density(StressTensorKind.RW, state)
    shape = state.shape
    cells = np.indices(shape).reshape(3, -1).T
    table = np.column_stack([cells, f_am.reshape(-1, 3), f_rw.reshape(-1, 3)])
    np.savetxt(
        path,
        table,
        fmt=["%d"] * 3 + ["%.16e"] * 6,
        delimiter=",",
        header="i,j,k,f_AM_x,f_AM_y,f_AM_z,f_RW_x,f_RW_y,f_RW_z",
        comments="",
    )
    _status(f"💾 Force densities written to {path}")


def cmd_classical(config: RunConfig, workers: int = 1) -> CommandOutput:
    section = config.section("classical")
    spec = _liquid_spec(section)
    liquid, vacuum = condenser_regions(spec)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        h = liquid_rise_height(spec)
        am_jump = surface_stress_jump(StressTensorKind.AM, liquid, vacuum, VERTICAL)
        rw_jump = surface_stress_jump(StressTensorKind.RW, liquid, vacuum, VERTICAL)
        if section.force_density_out:
            _write_force_density(section, section.force_density_out)

    return CommandOutput(
        command="classical",
        config_json=config.resolved_json("classical"),
        columns=["eps", "E", "h", "am_jump", "rw_jump"],
        rows=[[section.eps, section.E, h, am_jump, rw_jump]],
        notes=_collect_warnings(caught),
    )


def cmd_liquid_rise(config: RunConfig, workers: int = 1) -> CommandOutput:
    section = config.section("liquid_rise")
    h = liquid_rise_height(_liquid_spec(section))
    return CommandOutput(
        command="liquid-rise",
        config_json=config.resolved_json("liquid_rise"),
        columns=["eps", "E", "rho_mass", "g", "h"],
        rows=[[section.eps, section.E, section.rho_mass, section.g, h]],
    )


COMMANDS = {
    "pressure": ("pressure", cmd_pressure),
    "rw-profile": ("rw_profile", cmd_rw_profile),
    "cutoff-scan": ("cutoff_scan", cmd_cutoff_scan),
    "near-interface": ("near_interface", cmd_near_interface),
    "classical": ("classical", cmd_classical),
    "liquid-rise": ("liquid_rise", cmd_liquid_rise),
}


def human_summary(output: CommandOutput) -> list[str]:
    """Short stderr lines describing a result."""
    lines = []
    if output.command == "pressure":
        for a, T, p, *_ in output.rows:
            line = f"   a={a:.3e} m T={T:g} K  P_AM={p:.6e} Pa"
            if T == 0:
                line += f"  (ideal mirrors: {ideal_mirror_pressure(a):.6e} Pa)"
            lines.append(line)
    elif output.command in ("classical", "liquid-rise"):
        row = output.rows[0]
        cols = dict(zip(output.columns, row))
        lines.append(f"   h = {cols['h']:.6e} m")
        if "am_jump" in cols:
            lines.append(f"   AM surface jump = {cols['am_jump']:.6e} Pa")
            lines.append(f"   RW surface jump = {cols['rw_jump']:.6e} Pa")
    else:
        for key in sorted(output.summary):
            lines.append(f"   {key}: {output.summary[key]}")
    return lines
