"""Bit-exact CSV formats for frequency grids and sweep tables.

Grid files: cell (1,1) is the literal marker ``nu_i\\nu_s``, the rest of
row 1 is the ascending signal axis in Hz; every following row is an idler
frequency followed by the matrix values for that row. All numbers are
written in scientific notation with 9 significant digits, newline ``\\n``,
no trailing separators, so identical data always produces identical bytes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GridFormatError

GRID_CORNER = "nu_i\\nu_s"
SWEEP_HEADER = "eta,delta_tau_ps,q,purity_true,purity_flat,purity_error,relative_brightness"
LIMIT_HEADER = "bandwidth_ratio,purity"
ANALYSIS_HEADER = "purity_flat,purity_error"


def _fmt(x: float) -> str:
    """9 significant digits, scientific."""
    return f"{x:.8e}"


def _parse_cell(text: str, row: int, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise GridFormatError(f"row {row}, column {col}: not a number: {text!r}") from None
    if not np.isfinite(value):
        raise GridFormatError(f"row {row}, column {col}: non-finite value {text!r}")
    return value


def _check_ascending(axis: np.ndarray, name: str) -> None:
    if np.any(np.diff(axis) <= 0):
        raise GridFormatError(f"{name} axis is not strictly ascending")


def write_grid_csv(path, signal_axis, idler_axis, values) -> None:
    """Write a real-valued matrix with its frequency axes."""
    signal_axis = np.asarray(signal_axis, dtype=float)
    idler_axis = np.asarray(idler_axis, dtype=float)
    values = np.asarray(values, dtype=float)
    _check_ascending(signal_axis, "signal")
    _check_ascending(idler_axis, "idler")
    if values.shape != (idler_axis.size, signal_axis.size):
        raise ValueError(
            f"values shape {values.shape} does not match axes "
            f"({idler_axis.size} x {signal_axis.size})"
        )
    lines = [",".join([GRID_CORNER] + [_fmt(v) for v in signal_axis])]
    for i, nu_i in enumerate(idler_axis):
        lines.append(",".join([_fmt(nu_i)] + [_fmt(v) for v in values[i]]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def read_grid_csv(path, require_nonnegative: bool = False):
    """Read a grid CSV; returns (signal_axis, idler_axis, values)."""
    text = Path(path).read_text(encoding="ascii")
    rows = text.splitlines()
    if len(rows) < 2:
        raise GridFormatError("grid file must have a header row and at least one data row")
    header = rows[0].split(",")
    if header[0] != GRID_CORNER:
        raise GridFormatError(f"row 1, column 1: expected {GRID_CORNER!r}, found {header[0]!r}")
    n_s = len(header) - 1
    if n_s < 1:
        raise GridFormatError("row 1: no signal frequencies")
    signal_axis = np.array([_parse_cell(c, 1, j + 2) for j, c in enumerate(header[1:])])
    _check_ascending(signal_axis, "signal")

    idler_axis = np.empty(len(rows) - 1)
    values = np.empty((len(rows) - 1, n_s))
    for i, row in enumerate(rows[1:], start=2):
        cells = row.split(",")
        if len(cells) != n_s + 1:
            raise GridFormatError(f"row {i}: expected {n_s + 1} cells, found {len(cells)}")
        idler_axis[i - 2] = _parse_cell(cells[0], i, 1)
        for j, cell in enumerate(cells[1:]):
            value = _parse_cell(cell, i, j + 2)
            if require_nonnegative and value < 0:
                raise GridFormatError(f"row {i}, column {j + 2}: negative intensity {value!r}")
            values[i - 2, j] = value
    _check_ascending(idler_axis, "idler")
    return signal_axis, idler_axis, values


def write_jsa_csv(prefix, grid, values) -> None:
    """Write a complex matrix as <prefix>.re.csv and <prefix>.im.csv."""
    prefix = str(prefix)
    write_grid_csv(prefix + ".re.csv", grid.signal_axis, grid.idler_axis, np.real(values))
    write_grid_csv(prefix + ".im.csv", grid.signal_axis, grid.idler_axis, np.imag(values))


def read_jsa_csv(prefix):
    """Read a complex matrix written by :func:`write_jsa_csv`."""
    prefix = str(prefix)
    signal_axis, idler_axis, re = read_grid_csv(prefix + ".re.csv")
    signal_im, idler_im, im = read_grid_csv(prefix + ".im.csv")
    if re.shape != im.shape or not np.array_equal(signal_axis, signal_im) or not np.array_equal(idler_axis, idler_im):
        raise GridFormatError("real and imaginary grid files do not match")
    return signal_axis, idler_axis, re + 1j * im


def write_sweep_table(path, points) -> None:
    """Write SweepPoints as CSV (delta_tau in picoseconds)."""
    lines = [SWEEP_HEADER]
    for p in points:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    p.eta,
                    p.delta_tau * 1e12,
                    p.q,
                    p.purity_true,
                    p.purity_flat,
                    p.purity_error,
                    p.relative_brightness,
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def read_sweep_table(path):
    """Read a sweep table as a list of row dicts keyed by column name."""
    rows = Path(path).read_text(encoding="ascii").splitlines()
    if not rows or rows[0] != SWEEP_HEADER:
        raise GridFormatError(f"row 1: expected header {SWEEP_HEADER!r}")
    names = SWEEP_HEADER.split(",")
    out = []
    for i, row in enumerate(rows[1:], start=2):
        cells = row.split(",")
        if len(cells) != len(names):
            raise GridFormatError(f"row {i}: expected {len(names)} cells, found {len(cells)}")
        out.append({k: _parse_cell(c, i, j + 1) for j, (k, c) in enumerate(zip(names, cells))})
    return out


def write_limit_table(path, rows) -> None:
    """Write (bandwidth_ratio, purity) pairs as CSV."""
    lines = [LIMIT_HEADER]
    for ratio, purity in rows:
        lines.append(f"{_fmt(ratio)},{_fmt(purity)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def write_analysis_csv(path, purity_flat: float, purity_error: float) -> None:
    """Write the analyze-command result row."""
    Path(path).write_text(
        f"{ANALYSIS_HEADER}\n{_fmt(purity_flat)},{_fmt(purity_error)}\n",
        encoding="ascii",
        newline="\n",
    )
