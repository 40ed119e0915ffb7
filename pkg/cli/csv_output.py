"""
Deterministic CSV rendering of command results.

Floats are written with 17 significant digits in lowercase scientific
notation. The header comment block records library versions and the
resolved configuration; no timestamps, so equal inputs give equal bytes.
"""

import sys
from typing import Optional

import numpy as np
import pydantic
import scipy
from pydantic import BaseModel

PROJECT = "casimir-stress"
VERSION = "0.1.0"


class CommandOutput(BaseModel):
    """Everything a command writes: table, trailing summary and exit status."""

    command: str
    config_json: str
    columns: list[str]
    rows: list[list[Optional[float]]]
    summary: dict[str, Optional[float | bool | int | str]] = {}
    notes: list[str] = []
    converged: bool = True


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


def render_csv(output: CommandOutput) -> str:
    lines = [
        f"# {PROJECT} {VERSION} {output.command}",
        f"# numpy {np.__version__}, scipy {scipy.__version__}, pydantic {pydantic.VERSION}",
        f"# config: {output.config_json}",
        ",".join(output.columns),
    ]
    for row in output.rows:
        lines.append(",".join(format_value(v) for v in row))
    for key in sorted(output.summary):
        lines.append(f"# {key}: {format_value(output.summary[key])}")
    return "\n".join(lines) + "\n"


def write_output(output: CommandOutput, path: Optional[str] = None) -> None:
    text = render_csv(output)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
