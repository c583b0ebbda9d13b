"""Plain-text persistence: field checkpoints and CSV tables.

A field checkpoint is a single header line

    DNLSFIELD v1 L=<real> N=<int> t=<real> gauge=<u|v|w>

followed by N lines of ``re im``.  All reals are written with ``repr``,
the shortest representation that round-trips the double exactly, so a
read-back reproduces the complex samples bit for bit and every derived
functional to machine precision.  CSV tables use the same float format,
Unix line endings, and a trailing newline, making outputs byte-identical
across runs with the same inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .grid import Grid, make_grid

GAUGES = ("u", "v", "w")
_MAGIC = "DNLSFIELD v1"


@dataclass(frozen=True)
class FieldRecord:
    grid: Grid
    t: float
    gauge: str
    state: np.ndarray


def format_float(x: float) -> str:
    """Shortest decimal string that reads back as exactly this double."""
    return repr(float(x))


def write_field(
    path: str | Path,
    grid: Grid,
    state: np.ndarray,
    t: float,
    gauge: str,
) -> None:
    if gauge not in GAUGES:
        raise ValueError(f"gauge must be one of {GAUGES}, got {gauge!r}")
    state = np.asarray(state, dtype=complex)
    if state.shape != (grid.N,):
        raise ValueError(
            f"state must have shape ({grid.N},) to match the grid, got {state.shape}"
        )
    lines = [
        f"{_MAGIC} L={format_float(grid.L)} N={grid.N} "
        f"t={format_float(t)} gauge={gauge}"
    ]
    lines.extend(
        f"{format_float(z.real)} {format_float(z.imag)}" for z in state
    )
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_field(path: str | Path) -> FieldRecord:
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file is not a field checkpoint")
    header = lines[0]
    if not header.startswith(_MAGIC + " "):
        raise ValueError(f"{path}: missing '{_MAGIC}' header, got {header[:40]!r}")
    fields: dict[str, str] = {}
    for token in header[len(_MAGIC) + 1 :].split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"{path}: malformed header token {token!r}")
        fields[key] = value
    missing = {"L", "N", "t", "gauge"} - fields.keys()
    if missing:
        raise ValueError(f"{path}: header lacks {sorted(missing)}")
    L = float(fields["L"])
    N = int(fields["N"])
    t = float(fields["t"])
    gauge = fields["gauge"]
    if gauge not in GAUGES:
        raise ValueError(f"{path}: gauge must be one of {GAUGES}, got {gauge!r}")
    body = lines[1:]
    if len(body) != N:
        raise ValueError(f"{path}: expected {N} sample lines, found {len(body)}")
    state = np.empty(N, dtype=complex)
    for j, line in enumerate(body):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: line {j + 2} is not 're im': {line!r}")
        state[j] = complex(float(parts[0]), float(parts[1]))
    return FieldRecord(grid=make_grid(L, N), t=t, gauge=gauge, state=state)


def write_csv(path: str | Path, header: str, rows: Iterable[str]) -> None:
    """One header line plus pre-rendered rows, Unix endings, final newline."""
    lines = [header]
    lines.extend(rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
