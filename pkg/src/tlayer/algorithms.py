"""T-depth reduction procedures.

Four polynomial heuristics (greedy adjacent sweeps, divide and conquer,
graph-based merge ordering, windowed lookahead) plus an exponential exact
oracle for small instances. Every procedure returns the reduced circuit
together with a :class:`ReductionResult` whose merge log replays from the
input circuit to the output, so results are independently checkable.

The exact oracle and the lookahead windows use the free-reordering model:
any two in-scope columns may be merged directly, without regard to the
layers between them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .circuit import (
    Circuit,
    Column,
    MergeLogEntry,
    equal_letter_count,
    is_well_formed,
    merge_columns,
)

DEFAULT_PARTITION_SIZE = 4
DEFAULT_SIZE_CAP = 12


class SizeCapError(ValueError):
    """Exact reduction refused: the instance exceeds the size cap."""


@dataclass
class ReductionResult:
    """Outcome of one reduction run.

    `percent_reduction` is relative to `initial_depth`. For expansion runs
    (`expansion_factor` set) `initial_depth` is the pre-expansion depth, the
    merge log replays from the expanded circuit, and the percentage may be
    negative when the expansion is not recovered.
    """

    algorithm: str
    initial_depth: int
    final_depth: int
    percent_reduction: float
    merge_log: tuple[MergeLogEntry, ...]
    elapsed: float
    expansion_factor: int | None = None
    expanded_depth: int | None = None


def percent_reduction(initial: int, final: int) -> float:
    return 0.0 if initial == 0 else 100.0 * (initial - final) / initial


def _finish(algorithm: str, circuit: Circuit, cols: Sequence[Column],
            log: Sequence[MergeLogEntry], t0: float) -> tuple[Circuit, ReductionResult]:
    reduced = Circuit(circuit.n_qubits, tuple(cols))
    result = ReductionResult(
        algorithm=algorithm,
        initial_depth=circuit.t_depth,
        final_depth=reduced.t_depth,
        percent_reduction=percent_reduction(circuit.t_depth, reduced.t_depth),
        merge_log=tuple(log),
        elapsed=time.perf_counter() - t0,
    )
    return reduced, result


def _require_well_formed(circuit: Circuit) -> None:
    if not is_well_formed(circuit):
        raise ValueError("input circuit is not well-formed")


def reduce_greedy(circuit: Circuit) -> tuple[Circuit, ReductionResult]:
    """Sweep adjacent pairs left to right, merging where possible; after a
    merge the sweep stays put so the merged column meets its new right
    neighbor. Repeats until a full sweep merges nothing."""
    _require_well_formed(circuit)
    t0 = time.perf_counter()
    cols = list(circuit.columns)
    log: list[MergeLogEntry] = []
    while True:
        merged_any = False
        i = 0
        while i < len(cols) - 1:
            m = merge_columns(cols[i], cols[i + 1])
            if isinstance(m, Column):
                cols[i] = m
                del cols[i + 1]
                log.append(MergeLogEntry(i, i + 1, m))
                merged_any = True
            else:
                i += 1
        if not merged_any:
            break
    return _finish("greedy", circuit, cols, log, t0)


def _dnc(cols: Sequence[Column], start: int, end: int,
         ) -> tuple[list[Column], list[MergeLogEntry]]:
    # Log indices are relative to this segment; right-child entries are
    # shifted by the reduced left size because they replay after the left log.
    if start == end:
        return [cols[start]], []
    mid = (start + end) // 2
    left, left_log = _dnc(cols, start, mid)
    right, right_log = _dnc(cols, mid + 1, end)
    shift = len(left)
    log = left_log + [
        MergeLogEntry(e.left_index + shift, e.right_index + shift, e.result)
        for e in right_log
    ]
    if len(left) == 1 and len(right) == 1:
        m = merge_columns(left[0], right[0])
        if isinstance(m, Column):
            log.append(MergeLogEntry(0, 1, m))
            return [m], log
    return left + right, log


def reduce_dnc(circuit: Circuit) -> tuple[Circuit, ReductionResult]:
    """Recursively halve the column range; a merge happens only when both
    halves collapse to single columns. Column order is never changed."""
    _require_well_formed(circuit)
    t0 = time.perf_counter()
    if circuit.t_depth == 0:
        return _finish("dnc", circuit, [], [], t0)
    cols, log = _dnc(circuit.columns, 0, circuit.t_depth - 1)
    return _finish("dnc", circuit, cols, log, t0)


def reduce_graph(circuit: Circuit) -> tuple[Circuit, ReductionResult]:
    """Merge in order of adjacent-column similarity.

    Adjacent pairs are weighted by how many gates a merge would leave
    unchanged (equal-letter positions). On the resulting path graph the
    minimum spanning tree is the path itself; its edges are visited by
    descending weight (ties: smaller left index first). Merged-away columns
    are followed through a union-find map so later edges target survivors;
    edges whose endpoints already coincide are skipped."""
    _require_well_formed(circuit)
    t0 = time.perf_counter()
    cols = list(circuit.columns)
    log: list[MergeLogEntry] = []

    edges = [
        (equal_letter_count(cols[i], cols[i + 1]), i)
        for i in range(len(cols) - 1)
    ]
    edges.sort(key=lambda e: (-e[0], e[1]))

    ids = list(range(len(cols)))  # original column id of each live position
    parent = list(range(len(cols)))

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for _, left in edges:
        if len(cols) == 1:
            break
        ru, rv = find(left), find(left + 1)
        if ru == rv:
            continue
        i, j = ids.index(ru), ids.index(rv)
        if i > j:
            i, j = j, i
        m = merge_columns(cols[i], cols[j])
        if isinstance(m, Column):
            cols[i] = m
            survivor, gone = ids[i], ids[j]
            del cols[j]
            del ids[j]
            parent[gone] = survivor
            log.append(MergeLogEntry(i, j, m))
    return _finish("graph", circuit, cols, log, t0)


# ---------------------------------------------------------------------------
# Exact oracle

def _canonical(cols: Sequence[Column]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((c.phase, c.bits) for c in cols))


def _best_depth(cols: tuple[Column, ...], memo: dict) -> int:
    """Minimum reachable column count under the merge rule, memoized on the
    column multiset (merge opportunities do not depend on order)."""
    key = _canonical(cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    best = len(cols)
    n = len(cols)
    for i in range(n):
        for j in range(i + 1, n):
            m = merge_columns(cols[i], cols[j])
            if isinstance(m, Column):
                child = cols[:i] + (m,) + cols[i + 1:j] + cols[j + 1:]
                b = _best_depth(child, memo)
                if b < best:
                    best = b
                    if best == 1:
                        memo[key] = 1
                        return 1
    memo[key] = best
    return best


def _exact_cols(cols: tuple[Column, ...],
                ) -> tuple[tuple[Column, ...], tuple[MergeLogEntry, ...]]:
    """Optimal reduction of a column list; log indices track the evolving
    list (merge replaces the left position, deletes the right)."""
    memo: dict = {}
    _best_depth(cols, memo)
    log: list[MergeLogEntry] = []
    while True:
        best = memo[_canonical(cols)]
        if best == len(cols):
            return cols, tuple(log)
        n = len(cols)
        advanced = False
        for i in range(n):
            for j in range(i + 1, n):
                m = merge_columns(cols[i], cols[j])
                if not isinstance(m, Column):
                    continue
                child = cols[:i] + (m,) + cols[i + 1:j] + cols[j + 1:]
                if _best_depth(child, memo) == best:
                    log.append(MergeLogEntry(i, j, m))
                    cols = child
                    advanced = True
                    break
            if advanced:
                break
        # a state with best < len always has a child reaching the same best
        assert advanced


def exact_reduce(circuit: Circuit, size_cap: int = DEFAULT_SIZE_CAP,
                 ) -> tuple[Circuit, ReductionResult]:
    """Minimum achievable T-depth by exhaustive search over merge sequences
    (exponential; refuses instances above `size_cap` columns)."""
    _require_well_formed(circuit)
    if circuit.t_depth > size_cap:
        raise SizeCapError(
            f"exact reduction refused: {circuit.t_depth} columns exceeds the "
            f"size cap of {size_cap} (exhaustive search is exponential; "
            f"raise the cap explicitly to override)")
    t0 = time.perf_counter()
    cols, log = _exact_cols(circuit.columns)
    return _finish("exact", circuit, cols, log, t0)


# ---------------------------------------------------------------------------
# Lookahead

def reduce_lookahead(circuit: Circuit, k: int = DEFAULT_PARTITION_SIZE,
                     ) -> tuple[Circuit, ReductionResult]:
    """Partition the columns into consecutive windows of size k and reduce
    each window exactly; repeat on the concatenation until a pass stops
    shrinking. Once at most k columns remain the whole circuit gets a final
    exact pass, so small instances reduce optimally."""
    if k < 2:
        raise ValueError(f"partition size k must be >= 2, got {k}")
    _require_well_formed(circuit)
    t0 = time.perf_counter()
    cols = list(circuit.columns)
    log: list[MergeLogEntry] = []
    window_cache: dict = {}

    def exact_window(window: tuple[Column, ...]):
        key = tuple((c.phase, c.bits) for c in window)
        hit = window_cache.get(key)
        if hit is None:
            hit = _exact_cols(window)
            window_cache[key] = hit
        return hit

    while True:
        n = len(cols)
        if n <= k:
            reduced, wlog = exact_window(tuple(cols))
            log.extend(wlog)
            cols = list(reduced)
            break
        new_cols: list[Column] = []
        removed = 0  # columns dropped earlier in this pass
        for start in range(0, n, k):
            window = tuple(cols[start:start + k])
            reduced, wlog = exact_window(window)
            offset = start - removed
            log.extend(
                MergeLogEntry(e.left_index + offset, e.right_index + offset, e.result)
                for e in wlog
            )
            removed += len(window) - len(reduced)
            new_cols.extend(reduced)
        if len(new_cols) == n:
            break
        cols = new_cols
    return _finish("lookahead", circuit, cols, log, t0)


# ---------------------------------------------------------------------------
# Dispatch

ALGORITHMS: tuple[str, ...] = ("greedy", "dnc", "graph", "lookahead", "exact")
HEURISTICS: tuple[str, ...] = ("greedy", "dnc", "graph", "lookahead")


def reduce_circuit(circuit: Circuit, algo: str, k: int = DEFAULT_PARTITION_SIZE,
                   size_cap: int = DEFAULT_SIZE_CAP,
                   ) -> tuple[Circuit, ReductionResult]:
    """Run one reduction algorithm by name."""
    if algo == "greedy":
        return reduce_greedy(circuit)
    if algo == "dnc":
        return reduce_dnc(circuit)
    if algo == "graph":
        return reduce_graph(circuit)
    if algo == "lookahead":
        return reduce_lookahead(circuit, k=k)
    if algo == "exact":
        return exact_reduce(circuit, size_cap=size_cap)
    raise ValueError(f"unknown algorithm {algo!r} (choose from {', '.join(ALGORITHMS)})")
