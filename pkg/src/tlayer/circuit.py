"""Grid representation of T-only circuits and the column merge rule.

A circuit is a sequence of columns over a fixed qubit count; each column is
one T-gate layer: a global sign plus one Pauli letter per qubit. T-depth is
the number of columns. Two columns merge into one when every per-qubit letter
pair commutes (equal letters or one identity) and the surviving non-identity
cells of the element-wise product all carry the same sign.

Cell convention: position i of a column with phase s carries the signed Pauli
s*letters[i] when letters[i] != I, and +I when letters[i] == I (identity cells
are sign-free). Under this convention two opposite-phase columns with disjoint
supports refuse to merge: their product would need both signs at once.

Columns cache a 2-bits-per-qubit integer packing of their letters so that
commutation checks and merges are word-parallel; tests pin the packed path
against the per-position signed products of :mod:`tlayer.pauli`.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .pauli import PauliLetter, SignedPauli, _LETTER_BY_CODE, letter_from_name

FORMAT_VERSION = 1
FILE_SUFFIX = ".tcir.json"


class CircuitFormatError(ValueError):
    """Raised when a circuit or merge-log document fails to parse."""


class ReplayError(ValueError):
    """Raised when a merge log does not replay against a circuit."""


@functools.lru_cache(maxsize=None)
def _low_bits_mask(n_qubits: int) -> int:
    # 0b0101...01 over n_qubits 2-bit blocks
    return ((1 << (2 * n_qubits)) - 1) // 3


def _pack_letters(letters: Sequence[PauliLetter]) -> int:
    bits = 0
    for i, p in enumerate(letters):
        bits |= p.value << (2 * i)
    return bits


def _unpack_letters(bits: int, n_qubits: int) -> tuple[PauliLetter, ...]:
    return tuple(_LETTER_BY_CODE[(bits >> (2 * i)) & 3] for i in range(n_qubits))


@dataclass(frozen=True)
class Column:
    """One T-gate layer: a sign in {+1, -1} and one letter per qubit."""

    phase: int
    letters: tuple[PauliLetter, ...]

    def __post_init__(self) -> None:
        if self.phase not in (1, -1):
            raise ValueError(f"column phase must be +1 or -1, got {self.phase!r}")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    @functools.cached_property
    def bits(self) -> int:
        """Letters packed 2 bits per qubit (I=0, X=1, Y=2, Z=3)."""
        return _pack_letters(self.letters)

    @functools.cached_property
    def support(self) -> int:
        """Low-bit mask with a 1 in block i iff letters[i] != I."""
        b = self.bits
        return (b | (b >> 1)) & _low_bits_mask(len(self.letters))

    @property
    def n_nonidentity(self) -> int:
        return self.support.bit_count()

    def cell(self, i: int) -> SignedPauli:
        """Signed cell at qubit i under the identity-is-sign-free convention."""
        letter = self.letters[i]
        return SignedPauli(self.phase if letter is not PauliLetter.I else 1, letter)

    def letters_str(self) -> str:
        return "".join(p.name for p in self.letters)

    @classmethod
    def from_strings(cls, phase: str, letters: str) -> "Column":
        if phase not in ("+", "-"):
            raise ValueError(f"column phase must be '+' or '-', got {phase!r}")
        return cls(1 if phase == "+" else -1,
                   tuple(letter_from_name(ch) for ch in letters))

    def __str__(self) -> str:
        return ("+" if self.phase == 1 else "-") + self.letters_str()


@dataclass(frozen=True)
class Circuit:
    """Ordered columns over a fixed qubit count; T-depth = column count."""

    n_qubits: int
    columns: tuple[Column, ...]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        if not isinstance(self.columns, tuple):
            object.__setattr__(self, "columns", tuple(self.columns))

    @property
    def t_depth(self) -> int:
        return len(self.columns)

    @property
    def t_count(self) -> int:
        return sum(col.n_nonidentity for col in self.columns)


class MergeRejection(enum.Enum):
    """Why two columns refused to merge."""

    NON_COMMUTING = "non-commuting"
    PHASE_INCONSISTENT = "phase-inconsistent"
    ALL_IDENTITY = "all-identity"


MergeOutcome = Union[Column, MergeRejection]


def _check_lengths(a: Column, b: Column) -> int:
    n = len(a.letters)
    if len(b.letters) != n:
        raise ValueError(
            f"column length mismatch: {n} vs {len(b.letters)} letters")
    return n


def column_commutes(a: Column, b: Column) -> bool:
    """True iff every per-qubit letter pair commutes."""
    n = _check_lengths(a, b)
    x = a.bits ^ b.bits
    nz_x = (x | (x >> 1)) & _low_bits_mask(n)
    return not (a.support & b.support & nz_x)


def merge_columns(a: Column, b: Column) -> MergeOutcome:
    """Merge two layers into one, or say why it cannot be done.

    The merged column is the element-wise signed product. Positions where the
    letters differ on both supports anti-commute (NON_COMMUTING); surviving
    non-identity cells that disagree in sign are PHASE_INCONSISTENT; a product
    with no non-identity cell left is ALL_IDENTITY (two equal pi/8 layers
    compose to a pi/4 layer, which has no place in a T-only grid).

    Because commuting letters are equal or identity, the merged letters are
    exactly the XOR of the packed letters, and the only sign-carrying cells
    are those supported by exactly one input.
    """
    n = _check_lengths(a, b)
    x = a.bits ^ b.bits
    nz_x = (x | (x >> 1)) & _low_bits_mask(n)
    if a.support & b.support & nz_x:
        return MergeRejection.NON_COMMUTING
    only_a = a.support & ~b.support
    only_b = b.support & ~a.support
    if only_a and only_b and a.phase != b.phase:
        return MergeRejection.PHASE_INCONSISTENT
    if x == 0:
        return MergeRejection.ALL_IDENTITY
    phase = a.phase if only_a else b.phase
    return Column(phase, _unpack_letters(x, n))


def is_well_formed(c: Circuit) -> bool:
    """All columns sized to n_qubits and no all-identity layer."""
    return all(
        len(col.letters) == c.n_qubits and col.support != 0 for col in c.columns
    )


def equal_letter_count(a: Column, b: Column) -> int:
    """Number of positions where the two columns carry the same letter,
    identity pairs included (a merge leaves these gates unchanged)."""
    n = _check_lengths(a, b)
    x = a.bits ^ b.bits
    differing = ((x | (x >> 1)) & _low_bits_mask(n)).bit_count()
    return n - differing


# ---------------------------------------------------------------------------
# Merge logs

@dataclass(frozen=True)
class MergeLogEntry:
    """One merge step: columns at left/right indices (at the time of the
    merge) combined into `result`, which replaces the left and deletes the
    right."""

    left_index: int
    right_index: int
    result: Column


def replay_merge_log(circuit: Circuit, log: Iterable[MergeLogEntry],
                     strict: bool = True) -> Circuit:
    """Apply a merge log to a circuit and return the resulting circuit.

    With strict=True each step recomputes the merge and demands it succeed
    with exactly the recorded result, so a replayed log is a proof of the
    reduction.
    """
    cols = list(circuit.columns)
    for step, entry in enumerate(log):
        i, j = entry.left_index, entry.right_index
        if not (0 <= i < j < len(cols)):
            raise ReplayError(
                f"step {step}: indices ({i}, {j}) out of range for "
                f"{len(cols)} columns")
        if strict:
            got = merge_columns(cols[i], cols[j])
            if got != entry.result:
                raise ReplayError(
                    f"step {step}: merge of columns ({i}, {j}) gave "
                    f"{got} instead of recorded {entry.result}")
        cols[i] = entry.result
        del cols[j]
    return Circuit(circuit.n_qubits, tuple(cols))


# ---------------------------------------------------------------------------
# Serialization

def to_json_dict(c: Circuit) -> dict:
    return {
        "version": FORMAT_VERSION,
        "n_qubits": c.n_qubits,
        "columns": [
            {"phase": "+" if col.phase == 1 else "-", "letters": col.letters_str()}
            for col in c.columns
        ],
    }


def serialize(c: Circuit) -> str:
    """Canonical one-line JSON for a circuit (stable across runs)."""
    return json.dumps(to_json_dict(c), sort_keys=True, separators=(",", ":"))


def from_json_dict(doc: object) -> Circuit:
    if not isinstance(doc, dict):
        raise CircuitFormatError("circuit document must be a JSON object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise CircuitFormatError(f"version: expected {FORMAT_VERSION}, got {version!r}")
    n_qubits = doc.get("n_qubits")
    if not isinstance(n_qubits, int) or n_qubits < 1:
        raise CircuitFormatError(f"n_qubits: expected positive integer, got {n_qubits!r}")
    raw_columns = doc.get("columns")
    if not isinstance(raw_columns, list):
        raise CircuitFormatError("columns: expected a list")
    columns = []
    for k, raw in enumerate(raw_columns):
        if not isinstance(raw, dict):
            raise CircuitFormatError(f"columns[{k}]: expected an object")
        phase = raw.get("phase")
        if phase not in ("+", "-"):
            raise CircuitFormatError(
                f"columns[{k}].phase: expected '+' or '-', got {phase!r}")
        letters = raw.get("letters")
        if not isinstance(letters, str) or len(letters) != n_qubits:
            raise CircuitFormatError(
                f"columns[{k}].letters: expected string of {n_qubits} letters, "
                f"got {letters!r}")
        try:
            col = Column.from_strings(phase, letters)
        except ValueError as exc:
            raise CircuitFormatError(f"columns[{k}].letters: {exc}") from None
        columns.append(col)
    return Circuit(n_qubits, tuple(columns))


def deserialize(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"invalid JSON: {exc}") from None
    return from_json_dict(doc)


def save_circuit(c: Circuit, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(c))
        fh.write("\n")


def load_circuit(path) -> Circuit:
    with open(path) as fh:
        return deserialize(fh.read())


def log_to_json(log: Sequence[MergeLogEntry]) -> str:
    entries = [
        {
            "left": e.left_index,
            "right": e.right_index,
            "result": {"phase": "+" if e.result.phase == 1 else "-",
                       "letters": e.result.letters_str()},
        }
        for e in log
    ]
    return json.dumps(entries, sort_keys=True, separators=(",", ":"))


def log_from_json(text: str) -> list[MergeLogEntry]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, list):
        raise CircuitFormatError("merge log must be a JSON list")
    entries = []
    for k, raw in enumerate(doc):
        if not isinstance(raw, dict):
            raise CircuitFormatError(f"log[{k}]: expected an object")
        try:
            left, right = raw["left"], raw["right"]
            result = raw["result"]
            col = Column.from_strings(result["phase"], result["letters"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CircuitFormatError(f"log[{k}]: {exc}") from None
        if not isinstance(left, int) or not isinstance(right, int):
            raise CircuitFormatError(f"log[{k}]: indices must be integers")
        entries.append(MergeLogEntry(left, right, col))
    return entries
