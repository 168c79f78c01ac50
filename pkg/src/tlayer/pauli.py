"""Signed single-qubit Pauli algebra: letters, phases, products, commutation.

A pi/8 rotation layer cell is written ``+P`` or ``-P`` with P in {I, X, Y, Z}.
Products of such cells pick up phases from the cyclic group {1, i, -1, -i};
imaginary phases occur only inside products, never in stored circuit cells,
which is why :class:`SignedPauli` (storable, real sign) and
:class:`PhasedPauli` (product result, any phase) are distinct types.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class PauliLetter(enum.Enum):
    """The four Pauli letters. Integer codes are the 2-bit packing used
    by circuit columns (I must stay 0 so XOR-composition works)."""

    I = 0
    X = 1
    Y = 2
    Z = 3

    def __repr__(self) -> str:
        return self.name


class Phase(enum.Enum):
    """Powers of i: the cyclic group {+1, +i, -1, -i} under multiplication."""

    PLUS_ONE = 0
    PLUS_I = 1
    MINUS_ONE = 2
    MINUS_I = 3

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase((self.value + other.value) % 4)

    @property
    def symbol(self) -> str:
        return ("+", "+i", "-", "-i")[self.value]

    @property
    def is_real(self) -> bool:
        return self.value % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for real phases; raises for imaginary ones."""
        if not self.is_real:
            raise ValueError(f"phase {self.symbol} is imaginary, has no sign")
        return 1 if self.value == 0 else -1

    @classmethod
    def from_sign(cls, sign: int) -> "Phase":
        if sign == 1:
            return cls.PLUS_ONE
        if sign == -1:
            return cls.MINUS_ONE
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")


@dataclass(frozen=True)
class SignedPauli:
    """A storable cell: real sign (+1/-1) times a Pauli letter."""

    sign: int
    letter: PauliLetter

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    def as_phased(self) -> "PhasedPauli":
        return PhasedPauli(Phase.from_sign(self.sign), self.letter)

    def __str__(self) -> str:
        return ("+" if self.sign == 1 else "-") + self.letter.name


@dataclass(frozen=True)
class PhasedPauli:
    """A product result: any phase in {+1, +i, -1, -i} times a Pauli letter."""

    phase: Phase
    letter: PauliLetter

    def as_signed(self) -> SignedPauli:
        """Convert back to a storable cell; raises if the phase is imaginary."""
        return SignedPauli(self.phase.sign, self.letter)

    def __str__(self) -> str:
        return self.phase.symbol + self.letter.name


# Letter products: (a, b) -> (i-power, letter) such that a.b = i**power * letter.
# Cyclic rule XY = iZ, YZ = iX, ZX = iY; reversed order flips to -i.
_I, _X, _Y, _Z = PauliLetter.I, PauliLetter.X, PauliLetter.Y, PauliLetter.Z
_LETTER_PRODUCT: dict[tuple[PauliLetter, PauliLetter], tuple[int, PauliLetter]] = {
    (_I, _I): (0, _I), (_I, _X): (0, _X), (_I, _Y): (0, _Y), (_I, _Z): (0, _Z),
    (_X, _I): (0, _X), (_X, _X): (0, _I), (_X, _Y): (1, _Z), (_X, _Z): (3, _Y),
    (_Y, _I): (0, _Y), (_Y, _X): (3, _Z), (_Y, _Y): (0, _I), (_Y, _Z): (1, _X),
    (_Z, _I): (0, _Z), (_Z, _X): (1, _Y), (_Z, _Y): (3, _X), (_Z, _Z): (0, _I),
}


def phased_multiply(a: PhasedPauli, b: PhasedPauli) -> PhasedPauli:
    """Product a.b with full phase tracking (a is the left factor)."""
    power, letter = _LETTER_PRODUCT[(a.letter, b.letter)]
    return PhasedPauli(Phase((a.phase.value + b.phase.value + power) % 4), letter)


def multiply(a: SignedPauli, b: SignedPauli) -> PhasedPauli:
    """Matrix product a.b of two signed Paulis (a is the left factor)."""
    return phased_multiply(a.as_phased(), b.as_phased())


def letters_commute(a: PauliLetter, b: PauliLetter) -> bool:
    """Single-qubit commutation: equal letters, or either is the identity."""
    return a == b or a is PauliLetter.I or b is PauliLetter.I


_LETTER_BY_NAME = {p.name: p for p in PauliLetter}
_LETTER_BY_CODE = {p.value: p for p in PauliLetter}


def letter_from_name(name: str) -> PauliLetter:
    try:
        return _LETTER_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown Pauli letter {name!r}") from None


def parse_signed(text: str) -> SignedPauli:
    """Parse '+X' / '-Z' style cell text."""
    if len(text) != 2 or text[0] not in "+-":
        raise ValueError(f"malformed signed Pauli {text!r}")
    return SignedPauli(1 if text[0] == "+" else -1, letter_from_name(text[1]))
