"""tlayer: T-depth minimization for grids of Pauli pi/8 rotations."""

__version__ = "0.1.0"

from .pauli import PauliLetter, Phase, SignedPauli, PhasedPauli, multiply, letters_commute
from .circuit import (
    Circuit,
    Column,
    MergeLogEntry,
    MergeRejection,
    column_commutes,
    deserialize,
    is_well_formed,
    merge_columns,
    replay_merge_log,
    serialize,
)
from .generator import (
    CircuitParams,
    ClassLabel,
    DatasetStats,
    classify,
    generate,
    parameter_grid,
    t_gate_density,
)
from .algorithms import (
    ReductionResult,
    exact_reduce,
    reduce_circuit,
    reduce_dnc,
    reduce_graph,
    reduce_greedy,
    reduce_lookahead,
)
from .expansion import ExpansionSpec, expand, reduce_with_expansion

__all__ = [
    "PauliLetter", "Phase", "SignedPauli", "PhasedPauli", "multiply",
    "letters_commute", "Circuit", "Column", "MergeLogEntry", "MergeRejection",
    "column_commutes", "deserialize", "is_well_formed", "merge_columns",
    "replay_merge_log", "serialize", "CircuitParams", "ClassLabel",
    "DatasetStats", "classify", "generate", "parameter_grid", "t_gate_density",
    "ReductionResult", "exact_reduce", "reduce_circuit", "reduce_dnc",
    "reduce_graph", "reduce_greedy", "reduce_lookahead", "ExpansionSpec",
    "expand", "reduce_with_expansion",
]
