"""Seeded random circuit generation, the 2,250-point parameter grid, and
depth/density/qubit-size classification.

Reproducibility contract: every circuit is a pure function of its
:class:`CircuitParams` (including the 64-bit seed). Per-grid-point seeds are
the first 64-bit word of ``numpy.random.SeedSequence((master_seed, index))``
and each circuit draws from a Philox counter-based stream keyed by its seed,
so generation is order-independent and parallel-safe. The dataset digest is
the SHA-256 of the serialized circuits in grid order.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from . import __version__
from .circuit import (
    FILE_SUFFIX,
    Circuit,
    CircuitFormatError,
    Column,
    save_circuit,
    load_circuit,
    serialize,
)
from .pauli import _LETTER_BY_CODE

DEFAULT_SEED = 1

QUBIT_VALUES = tuple(range(10, 101, 10))
N_COLUMN_STEPS = 15
N_TGATE_STEPS = 15
QUICK_MAX_QUBITS = 40


@dataclass(frozen=True)
class CircuitParams:
    """Size parameters plus the 64-bit seed that fixes one random circuit."""

    n_qubits: int
    n_columns: int
    n_tgates: int
    seed: int

    def __post_init__(self) -> None:
        q, c, t = self.n_qubits, self.n_columns, self.n_tgates
        if q < 1 or c < 1:
            raise ValueError(f"qubits and columns must be positive, got q={q}, c={c}")
        if t < max(q, c) or t > q * c:
            raise ValueError(
                f"n_tgates must lie in [max(q,c), q*c] = [{max(q, c)}, {q * c}], "
                f"got {t}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def density(self) -> float:
        return self.n_tgates / (self.n_qubits * self.n_columns)


def _point_seed(master_seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=(master_seed, index))
               .generate_state(1, dtype=np.uint64)[0])


def _spaced_ints(lo: int, hi: int, n: int) -> list[int]:
    # linear spacing, rounded; duplicates after rounding are kept
    return [int(round(v)) for v in np.linspace(lo, hi, n)]


def parameter_grid(master_seed: int = DEFAULT_SEED) -> list[CircuitParams]:
    """The full 10 x 15 x 15 = 2,250 point grid, in canonical order.

    Qubits run over 10..100 in steps of 10; for each qubit count q the column
    axis is 15 linearly spaced values over [1, 10q]; for each (q, c) the
    T-gate axis is 15 linearly spaced values over [max(q, c), q*c], clamped
    to that range after rounding.
    """
    grid: list[CircuitParams] = []
    index = 0
    for q in QUBIT_VALUES:
        for c in _spaced_ints(1, 10 * q, N_COLUMN_STEPS):
            lo, hi = max(q, c), q * c
            for t in _spaced_ints(lo, hi, N_TGATE_STEPS):
                t = min(max(t, lo), hi)
                grid.append(CircuitParams(q, c, t, _point_seed(master_seed, index)))
                index += 1
    return grid


def quick_indices(grid: Sequence[CircuitParams],
                  max_qubits: int = QUICK_MAX_QUBITS) -> list[int]:
    """Indices of the documented quick subgrid (small qubit counts only)."""
    return [i for i, p in enumerate(grid) if p.n_qubits <= max_qubits]


def generate(p: CircuitParams) -> Circuit:
    """Generate the circuit fixed by `p`: exactly p.n_tgates non-identity
    cells, every row and column covered, letters uniform over {X, Y, Z},
    column phases uniform over {+, -}.

    Placement: one T per column at a random row; empty rows are repaired by
    adding a T (while budget remains) or by moving a T from a multi-T row
    down its own column; the remaining budget lands uniformly on empty cells.
    """
    q, c, t = p.n_qubits, p.n_columns, p.n_tgates
    rng = np.random.Generator(np.random.Philox(key=p.seed))
    occupied = np.zeros((q, c), dtype=bool)

    rows = rng.integers(0, q, size=c)
    occupied[rows, np.arange(c)] = True
    placed = c

    for r in range(q):
        if occupied[r].any():
            continue
        if placed < t:
            occupied[r, int(rng.integers(0, c))] = True
            placed += 1
        else:
            # move a cell out of a multi-cell row, staying in its column
            donor_rows = np.flatnonzero(occupied.sum(axis=1) >= 2)
            donor_cells = np.argwhere(occupied[donor_rows])
            pick = int(rng.integers(0, len(donor_cells)))
            r0, c0 = donor_rows[donor_cells[pick, 0]], donor_cells[pick, 1]
            occupied[r0, c0] = False
            occupied[r, c0] = True

    remainder = t - placed
    if remainder:
        flat = occupied.reshape(-1)
        empty = np.flatnonzero(~flat)
        flat[rng.choice(empty, size=remainder, replace=False)] = True

    # letters assigned in column-major cell order, then column phases
    mask_cm = occupied.T.reshape(-1)
    codes = np.zeros(q * c, dtype=np.uint8)
    codes[mask_cm] = rng.integers(1, 4, size=int(mask_cm.sum()), dtype=np.uint8)
    by_column = codes.reshape(c, q)
    phases = rng.integers(0, 2, size=c)

    columns = tuple(
        Column(1 if phases[j] == 0 else -1,
               tuple(_LETTER_BY_CODE[v] for v in by_column[j]))
        for j in range(c)
    )
    return Circuit(q, columns)


def t_gate_density(c: Circuit) -> float:
    """Non-identity cell count over grid area, in (0, 1] for well-formed circuits."""
    return c.t_count / (c.n_qubits * c.t_depth)


# ---------------------------------------------------------------------------
# Classification

@dataclass(frozen=True)
class ClassLabel:
    """Depth / T-density / qubit-size category, rendered like "S-L-S"."""

    depth: str
    density: str
    qubit_size: str

    def __post_init__(self) -> None:
        if self.depth not in ("S", "M", "D"):
            raise ValueError(f"depth class must be S/M/D, got {self.depth!r}")
        if self.density not in ("L", "M", "H"):
            raise ValueError(f"density class must be L/M/H, got {self.density!r}")
        if self.qubit_size not in ("S", "M", "L"):
            raise ValueError(f"qubit class must be S/M/L, got {self.qubit_size!r}")

    def __str__(self) -> str:
        return f"{self.depth}-{self.density}-{self.qubit_size}"


@dataclass(frozen=True)
class DatasetStats:
    """Tertile cut points for the depth and density axes of a dataset.

    Cuts are the 33.3rd/66.7th percentiles (numpy linear interpolation) of
    the dataset's column counts and T-gate densities; qubit-size cuts are
    fixed (<=30 small, <=70 medium, else large) since only ten discrete
    qubit values exist.
    """

    depth_cuts: tuple[float, float]
    density_cuts: tuple[float, float]

    @classmethod
    def from_params(cls, grid: Sequence[CircuitParams]) -> "DatasetStats":
        depths = [p.n_columns for p in grid]
        densities = [p.density for p in grid]
        dlo, dhi = np.percentile(depths, [100 / 3, 200 / 3])
        rlo, rhi = np.percentile(densities, [100 / 3, 200 / 3])
        return cls((float(dlo), float(dhi)), (float(rlo), float(rhi)))


def _tertile(value: float, cuts: tuple[float, float], names: str) -> str:
    if value <= cuts[0]:
        return names[0]
    if value <= cuts[1]:
        return names[1]
    return names[2]


def classify(c: Circuit, stats: DatasetStats) -> ClassLabel:
    """DTQ label of a circuit against dataset-wide tertile cuts."""
    depth = _tertile(c.t_depth, stats.depth_cuts, "SMD")
    density = _tertile(t_gate_density(c), stats.density_cuts, "LMH")
    q = c.n_qubits
    qubit_size = "S" if q <= 30 else ("M" if q <= 70 else "L")
    return ClassLabel(depth, density, qubit_size)


# ---------------------------------------------------------------------------
# Dataset I/O

MANIFEST_NAME = "manifest.json"


def circuit_id(index: int) -> str:
    return f"g{index:04d}"


def iter_dataset(master_seed: int = DEFAULT_SEED,
                 indices: Sequence[int] | None = None,
                 ) -> Iterator[tuple[int, CircuitParams, Circuit]]:
    """Yield (grid index, params, circuit) lazily, in grid order."""
    grid = parameter_grid(master_seed)
    chosen = range(len(grid)) if indices is None else indices
    for i in chosen:
        yield i, grid[i], generate(grid[i])


def dataset_digest(master_seed: int = DEFAULT_SEED,
                   indices: Sequence[int] | None = None) -> str:
    """SHA-256 over the serialized circuits in grid order."""
    h = hashlib.sha256()
    for _, _, circ in iter_dataset(master_seed, indices):
        h.update(serialize(circ).encode())
        h.update(b"\n")
    return "sha256:" + h.hexdigest()


def write_dataset(out_dir, master_seed: int = DEFAULT_SEED,
                  quick: bool = False, limit: int | None = None,
                  progress: bool = False) -> dict:
    """Write one circuit file per grid point plus a manifest; returns the
    manifest dict. `quick` keeps only the small-qubit subgrid; `limit` keeps
    the first N selected points (smoke tests). Grid indices, ids and
    per-point seeds are identical across full/quick/limited runs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = parameter_grid(master_seed)
    indices = quick_indices(grid) if quick else list(range(len(grid)))
    if limit is not None:
        indices = indices[:limit]
    stats = DatasetStats.from_params(grid)

    h = hashlib.sha256()
    entries = []
    t0 = time.perf_counter()
    for n_done, i in enumerate(indices, start=1):
        p = grid[i]
        circ = generate(p)
        cid = circuit_id(i)
        save_circuit(circ, out / f"{cid}{FILE_SUFFIX}")
        h.update(serialize(circ).encode())
        h.update(b"\n")
        entries.append({
            "id": cid,
            "file": f"{cid}{FILE_SUFFIX}",
            "n_qubits": p.n_qubits,
            "n_columns": p.n_columns,
            "n_tgates": p.n_tgates,
            "seed": p.seed,
            "t_density": p.density,
            "label": str(classify(circ, stats)),
        })
        if progress and n_done % 250 == 0:
            rate = n_done / (time.perf_counter() - t0)
            print(f"  generated {n_done}/{len(indices)} circuits ({rate:.0f}/s)")

    manifest = {
        "format": "tlayer-dataset/1",
        "tool_version": __version__,
        "master_seed": master_seed,
        "grid": "quick" if quick else "full",
        "limit": limit,
        "stats": {"depth_cuts": list(stats.depth_cuts),
                  "density_cuts": list(stats.density_cuts)},
        "digest": "sha256:" + h.hexdigest(),
        "circuits": entries,
    }
    with open(out / MANIFEST_NAME, "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return manifest


def load_manifest(dataset_dir) -> dict:
    path = Path(dataset_dir) / MANIFEST_NAME
    try:
        with open(path) as fh:
            manifest = json.load(fh)
    except FileNotFoundError:
        raise CircuitFormatError(f"no {MANIFEST_NAME} in {dataset_dir}") from None
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"{path}: invalid JSON: {exc}") from None
    if manifest.get("format") != "tlayer-dataset/1":
        raise CircuitFormatError(f"{path}: not a tlayer dataset manifest")
    return manifest


def load_dataset_circuit(dataset_dir, entry: dict) -> Circuit:
    return load_circuit(Path(dataset_dir) / entry["file"])
