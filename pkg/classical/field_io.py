"""
Columnar text format for DiscreteFieldState.

    # shape nx ny nz
    # spacing dx dy dz
    # i j k Ex Ey Ez Bx By Bz Px Py Pz Mx My Mz rho_charge Jx Jy Jz eps mu
    0 0 0 ...

One row per cell in C order (k fastest).
"""

from pathlib import Path

import numpy as np

from classical.fields import DiscreteFieldState

COLUMNS = [
    "i", "j", "k",
    "Ex", "Ey", "Ez",
    "Bx", "By", "Bz",
    "Px", "Py", "Pz",
    "Mx", "My", "Mz",
    "rho_charge",
    "Jx", "Jy", "Jz",
    "eps", "mu",
]  # fmt: skip


def save_field_state(state: DiscreteFieldState, path: Path | str) -> None:
    shape = state.shape
    n_cells = int(np.prod(shape))
    indices = np.indices(shape).reshape(3, n_cells).T
    table = np.column_stack(
        [
            indices,
            state.E.reshape(n_cells, 3),
            state.B.reshape(n_cells, 3),
            state.P.reshape(n_cells, 3),
            state.M.reshape(n_cells, 3),
            state.rho_charge.reshape(n_cells),
            state.J.reshape(n_cells, 3),
            state.eps.reshape(n_cells),
            state.mu.reshape(n_cells),
        ]
    )
    header = "\n".join(
        [
            "shape " + " ".join(str(n) for n in shape),
            "spacing " + " ".join(f"{d:.17g}" for d in state.spacing),
            " ".join(COLUMNS),
        ]
    )
    fmt = ["%d"] * 3 + ["%.17g"] * (len(COLUMNS) - 3)
    np.savetxt(path, table, fmt=fmt, header=header, comments="# ")


def _read_header(path: Path | str) -> dict[str, list[str]]:
    header = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            parts = line[1:].split()
            if parts:
                header[parts[0]] = parts[1:]
    return header


def load_field_state(path: Path | str) -> DiscreteFieldState:
    header = _read_header(path)
    if "shape" not in header or "spacing" not in header:
        raise ValueError(f"{path}: missing 'shape' or 'spacing' header line")
    shape = tuple(int(n) for n in header["shape"])
    spacing = tuple(float(d) for d in header["spacing"])

    table = np.atleast_2d(np.loadtxt(path, comments="#"))
    if table.shape != (int(np.prod(shape)), len(COLUMNS)):
        raise ValueError(
            f"{path}: expected {int(np.prod(shape))} rows of {len(COLUMNS)} columns, "
            f"got {table.shape}"
        )

    cells = table[:, :3].astype(int)
    order = np.ravel_multi_index(cells.T, shape)
    table = table[np.argsort(order)]

    def column(name):
        return table[:, COLUMNS.index(name)]

    def vector(prefix):
        return np.stack([column(prefix + c) for c in "xyz"], axis=-1).reshape(shape + (3,))

    return DiscreteFieldState(
        spacing=spacing,
        E=vector("E"),
        B=vector("B"),
        P=vector("P"),
        M=vector("M"),
        J=vector("J"),
        rho_charge=column("rho_charge").reshape(shape),
        eps=column("eps").reshape(shape),
        mu=column("mu").reshape(shape),
    )
