"""Pauli-string observables, projectors and the two-qubit magic square.

Conventions: the leftmost letter of a Pauli string acts on particle 1, tensor
products are row-major Kronecker products, and the computational basis is
ordered |00>, |01>, |10>, |11>.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from .exact import (
    I_UNIT,
    Matrix,
    Vec,
    identity,
    is_hermitian,
    is_idempotent,
    is_involution,
    mul,
    scale,
    tensor,
    commutes,
)

__all__ = [
    "PAULI_LETTERS",
    "PauliString",
    "Observable",
    "Projector",
    "MagicSquare",
    "MagicSquareError",
    "pauli_matrix",
    "sigma",
    "subscript_label",
    "observable_from_string",
    "to_projector",
    "mermin_square",
    "MERMIN_ROWS",
    "singlet_state",
]

PAULI_LETTERS = "IXYZ"


@lru_cache(maxsize=None)
def pauli_matrix(letter: str) -> Matrix:
    """The 2x2 matrix for ``I``, ``X``, ``Y`` or ``Z``."""
    if letter == "I":
        return identity(2)
    if letter == "X":
        return Matrix([[0, 1], [1, 0]])
    if letter == "Y":
        return Matrix([[0, -I_UNIT], [I_UNIT, 0]])
    if letter == "Z":
        return Matrix([[1, 0], [0, -1]])
    raise ValueError(f"unknown Pauli letter {letter!r}; expected one of I, X, Y, Z")


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of Pauli letters, e.g. ``-XZ``."""

    letters: str
    sign: int = 1

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a Pauli string needs at least one letter")
        bad = [c for c in self.letters if c not in PAULI_LETTERS]
        if bad:
            raise ValueError(f"unknown Pauli letter {bad[0]!r} in {self.letters!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        """Parse ``"XZ"``, ``"+XZ"`` or ``"-ZZ"``."""
        text = text.strip()
        sign = 1
        if text.startswith(("+", "-")):
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        return cls(text.upper(), sign)

    @property
    def qubits(self) -> int:
        return len(self.letters)

    def matrix(self) -> Matrix:
        m = _unsigned_matrix(self.letters)
        return m if self.sign == 1 else scale(-1, m)

    def __str__(self):
        return ("+" if self.sign == 1 else "-") + self.letters


@lru_cache(maxsize=None)
def _unsigned_matrix(letters: str) -> Matrix:
    return reduce(tensor, (pauli_matrix(c) for c in letters))


def sigma(particle: int, axis: str, qubits: int = 2) -> Matrix:
    """Single-particle Pauli operator, e.g. ``sigma(1, "x")`` is X on particle 1."""
    if not 1 <= particle <= qubits:
        raise ValueError(f"particle {particle} out of range 1..{qubits}")
    letters = ["I"] * qubits
    letters[particle - 1] = axis.upper()
    return PauliString("".join(letters)).matrix()


def subscript_label(letters: str) -> str:
    """Particle/axis subscript for a Pauli string: ``"XZ"`` -> ``"1x2z"``."""
    parts = [f"{i + 1}{c.lower()}" for i, c in enumerate(letters) if c != "I"]
    return "".join(parts) or "id"


@dataclass(frozen=True)
class Observable:
    label: str
    string: PauliString
    matrix: Matrix = field(repr=False, compare=False)

    def __post_init__(self):
        if not is_hermitian(self.matrix):
            raise ValueError(f"observable {self.label!r} is not Hermitian")
        if not is_involution(self.matrix):
            raise ValueError(f"observable {self.label!r} does not square to the identity")


def observable_from_string(label: str | None, s: PauliString | str) -> Observable:
    """Build an observable; a ``None`` label defaults to the subscript form."""
    if isinstance(s, str):
        s = PauliString.parse(s)
    if label is None:
        label = subscript_label(s.letters)
    return Observable(label, s, s.matrix())


@dataclass(frozen=True)
class Projector:
    """``(I - source)/2``: value 1 where the source observable reads -1."""

    label: str
    matrix: Matrix = field(repr=False, compare=False)
    source: Observable

    def __post_init__(self):
        if not is_hermitian(self.matrix) or not is_idempotent(self.matrix):
            raise ValueError(f"projector {self.label!r} is not a Hermitian idempotent")


def to_projector(o: Observable, label: str | None = None) -> Projector:
    if not is_involution(o.matrix):
        raise ValueError(f"{o.label!r} is not an involution; cannot form a projector")
    d = o.matrix.dim
    p = scale(Fraction(1, 2), identity(d) - o.matrix)
    return Projector(label if label is not None else f"P_{o.label}", p, o)


class MagicSquareError(ValueError):
    pass


LINE_NAMES = ("row 1", "row 2", "row 3", "column 1", "column 2", "column 3")


class MagicSquare:
    """3x3 array of observables whose rows and columns are commuting triples.

    Construction verifies that each line is pairwise commuting and that the
    ordered product of each line is exactly +I or -I.  The signs are read off
    the matrices, never assumed.
    """

    def __init__(self, cells):
        cells = tuple(tuple(row) for row in cells)
        if len(cells) != 3 or any(len(row) != 3 for row in cells):
            raise MagicSquareError("a magic square needs exactly 3 rows of 3 observables")
        self.cells = cells
        dims = {o.matrix.dim for row in cells for o in row}
        if len(dims) != 1:
            raise MagicSquareError("all cells must act on the same space")
        self.dim = dims.pop()
        signs = []
        for name, line in zip(LINE_NAMES, self.lines()):
            for a, b in itertools.combinations(line, 2):
                if not commutes(a.matrix, b.matrix):
                    raise MagicSquareError(f"{name}: {a.label} and {b.label} do not commute")
            product = reduce(mul, (o.matrix for o in line))
            eye = identity(self.dim)
            if product == eye:
                signs.append(1)
            elif product == -eye:
                signs.append(-1)
            else:
                raise MagicSquareError(f"{name}: line product is not +I or -I")
        self.line_signs = tuple(signs)

    def rows(self):
        return [list(row) for row in self.cells]

    def columns(self):
        return [[self.cells[r][c] for r in range(3)] for c in range(3)]

    def lines(self):
        """Rows 1-3 followed by columns 1-3."""
        return self.rows() + self.columns()

    @property
    def line_names(self):
        return LINE_NAMES

    def observables(self):
        return [o for row in self.cells for o in row]

    def __repr__(self):
        body = " / ".join(" ".join(o.string.letters for o in row) for row in self.cells)
        return f"MagicSquare({body})"


MERMIN_ROWS = (("IZ", "ZI", "ZZ"), ("XI", "IX", "XX"), ("XZ", "ZX", "YY"))


def mermin_square() -> MagicSquare:
    """The two-qubit Mermin-Peres square with all entries of sign +1.

    Rows multiply to +I; the first two columns to +I and the third to -I.
    """
    square = MagicSquare(
        [[observable_from_string(None, s) for s in row] for row in MERMIN_ROWS]
    )
    if square.line_signs != (1, 1, 1, 1, 1, -1):
        raise MagicSquareError(f"unexpected line signs {square.line_signs}")
    return square


def singlet_state() -> Vec:
    """Unnormalized singlet (0, 1, -1, 0) in the basis |00>, |01>, |10>, |11>."""
    return Vec([0, 1, -1, 0])
