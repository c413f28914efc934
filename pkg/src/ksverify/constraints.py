"""Value-sum constraints derived from commuting projectors.

A set of pairwise commuting projectors whose sum has only even (or only odd)
eigenvalues forces any 0/1 value assignment to give an even (odd) number of
"yes" answers on that set.  A prepared state that is an eigenvector of such a
sum pins the count to the single eigenvalue.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Optional, Sequence

from .exact import (
    Matrix,
    Vec,
    add,
    apply,
    commutes,
    identity,
    integer_spectrum,
    mul,
    scale,
)
from .pauli import (
    MagicSquare,
    PauliString,
    Projector,
    mermin_square,
    sigma,
    singlet_state,
    to_projector,
)

__all__ = [
    "SPECTRAL",
    "STATE_EIGENVECTOR",
    "ParityConstraint",
    "Scenario",
    "ConstraintError",
    "NonCommutingError",
    "MixedParityError",
    "NotEigenvectorError",
    "ScenarioError",
    "projector_sum",
    "extract_constraint",
    "state_constraint",
    "mermin_peres_scenario",
    "singlet_scenario",
    "IdentityCheck",
    "identity_checks",
]

SPECTRAL = "spectral"
STATE_EIGENVECTOR = "state-eigenvector"


class ConstraintError(ValueError):
    """A context does not yield a constraint."""


class NonCommutingError(ConstraintError):
    def __init__(self, a: str, b: str):
        super().__init__(f"non-commuting subset: {a} and {b} do not commute")
        self.pair = (a, b)


class MixedParityError(ConstraintError):
    def __init__(self, members, spectrum):
        eig = ", ".join(str(k) for k, _ in spectrum)
        super().__init__(f"mixed parity: eigenvalues {{{eig}}} of {' + '.join(members)} do not share a parity")
        self.members = tuple(members)
        self.spectrum = tuple(spectrum)


class NotEigenvectorError(ConstraintError):
    def __init__(self, members):
        super().__init__(f"not an eigenvector: the state does not fix the value of {' + '.join(members)}")
        self.members = tuple(members)


class ScenarioError(ValueError):
    pass


def _parity(k: int) -> str:
    return "even" if k % 2 == 0 else "odd"


@dataclass(frozen=True)
class ParityConstraint:
    """The sum of the member values must lie in ``allowed_sums``."""

    members: tuple[str, ...]
    allowed_sums: frozenset[int]
    origin: str = SPECTRAL
    name: str = ""
    spectrum: Optional[tuple[tuple[int, int], ...]] = field(default=None, compare=False)
    sum_matrix: Optional[Matrix] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "allowed_sums", frozenset(self.allowed_sums))
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"repeated member in {self.members}")
        if not self.allowed_sums:
            raise ValueError("allowed_sums must be nonempty")
        if any(k < 0 or k > len(self.members) for k in self.allowed_sums):
            raise ValueError(f"allowed sums {sorted(self.allowed_sums)} outside 0..{len(self.members)}")
        if self.origin == SPECTRAL:
            if len({k % 2 for k in self.allowed_sums}) != 1:
                raise ValueError("spectral constraints must have allowed sums of a single parity")
        elif self.origin == STATE_EIGENVECTOR:
            if len(self.allowed_sums) != 1:
                raise ValueError("state-eigenvector constraints have exactly one allowed sum")
        else:
            raise ValueError(f"unknown origin {self.origin!r}")

    @property
    def parity(self) -> str:
        return _parity(next(iter(self.allowed_sums)))

    def is_satisfied_by(self, values: Mapping[str, int]) -> bool:
        return sum(values[m] for m in self.members) in self.allowed_sums


def _check_commuting(projectors: Sequence[Projector]) -> None:
    for a, b in itertools.combinations(projectors, 2):
        if not commutes(a.matrix, b.matrix):
            raise NonCommutingError(a.label, b.label)


def projector_sum(projectors: Sequence[Projector]) -> Matrix:
    if not projectors:
        raise ValueError("empty projector set")
    return reduce(add, (p.matrix for p in projectors))


def extract_constraint(projectors: Sequence[Projector], name: str = "") -> ParityConstraint:
    projectors = list(projectors)
    _check_commuting(projectors)
    total = projector_sum(projectors)
    members = [p.label for p in projectors]
    spectrum = integer_spectrum(total, range(len(projectors) + 1))
    sums = {k for k, _ in spectrum}
    if len({k % 2 for k in sums}) != 1:
        raise MixedParityError(members, spectrum)
    return ParityConstraint(members, sums, SPECTRAL, name, spectrum, total)


def state_constraint(state: Vec, projectors: Sequence[Projector], name: str = "") -> ParityConstraint:
    if state.is_zero():
        raise ValueError("the state must be nonzero")
    projectors = list(projectors)
    _check_commuting(projectors)
    total = projector_sum(projectors)
    image = apply(total, state)
    members = [p.label for p in projectors]
    for k in range(len(projectors) + 1):
        if image == state.scale(k):
            return ParityConstraint(members, {k}, STATE_EIGENVECTOR, name, None, total)
    raise NotEigenvectorError(members)


@dataclass(frozen=True)
class Scenario:
    """Labelled projectors, the constraints among them and an optional state."""

    name: str
    projectors: tuple[Projector, ...]
    constraints: tuple[ParityConstraint, ...]
    state: Optional[Vec] = None

    def __post_init__(self):
        object.__setattr__(self, "projectors", tuple(self.projectors))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        labels = [p.label for p in self.projectors]
        if len(set(labels)) != len(labels):
            raise ScenarioError("projector labels must be unique")
        index = {p.label: p for p in self.projectors}
        for i, c in enumerate(self.constraints):
            missing = [m for m in c.members if m not in index]
            if missing:
                raise ScenarioError(f"constraint {i} ({c.name or 'unnamed'}) refers to unknown projector {missing[0]!r}")
            try:
                _check_commuting([index[m] for m in c.members])
            except NonCommutingError as exc:
                raise ScenarioError(f"constraint {i} ({c.name or 'unnamed'}): {exc}") from None

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.projectors]

    def projector(self, label: str) -> Projector:
        for p in self.projectors:
            if p.label == label:
                return p
        raise KeyError(label)

    def with_constraints(self, constraints: Iterable[ParityConstraint], name: str | None = None) -> "Scenario":
        return Scenario(self.name if name is None else name, self.projectors, tuple(constraints), self.state)

    def without_constraint(self, index: int) -> "Scenario":
        kept = [c for i, c in enumerate(self.constraints) if i != index]
        return self.with_constraints(kept, f"{self.name} without constraint {index}")


def _square_projectors(square: MagicSquare) -> dict[str, Projector]:
    return {o.label: to_projector(o) for o in square.observables()}


def mermin_peres_scenario() -> Scenario:
    """Nine projectors of the magic square, one even/odd rule per row and column."""
    square = mermin_square()
    projectors = _square_projectors(square)
    constraints = [
        extract_constraint([projectors[o.label] for o in line], name)
        for name, line in zip(square.line_names, square.lines())
    ]
    return Scenario("mermin-peres", tuple(projectors.values()), constraints)


def singlet_scenario() -> Scenario:
    """Six projectors (first two columns) plus the singlet's pinned pair sums."""
    square = mermin_square()
    all_projectors = _square_projectors(square)
    columns = square.columns()[:2]
    projectors = {o.label: all_projectors[o.label] for col in columns for o in col}
    psi = singlet_state()
    constraints = [
        extract_constraint([projectors[o.label] for o in col], f"column {i + 1}")
        for i, col in enumerate(columns)
    ]
    for pair in (("1x", "2x"), ("1z", "2z"), ("1x2z", "1z2x")):
        members = [projectors[label] for label in pair]
        constraints.append(state_constraint(psi, members, f"singlet {' + '.join(pair)}"))
    return Scenario("singlet", tuple(projectors.values()), constraints, psi)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    needs: frozenset[str] = frozenset()
    needs_singlet: bool = False


def _proj(letters: str) -> Matrix:
    return scale(Fraction(1, 2), identity(4) - PauliString(letters).matrix())


def _op(letters: str) -> Matrix:
    return PauliString(letters).matrix()


def _is_multiple(image: Vec, state: Vec, k: int) -> bool:
    return image == state.scale(k)


def identity_checks() -> list[IdentityCheck]:
    """Exact operator identities behind the magic-square and singlet rules.

    Each check records which two-qubit Pauli strings it involves so callers
    can pick the ones relevant to a given scenario.
    """
    eye = identity(4)
    half = Fraction(1, 2)
    checks = []

    lhs = _proj("IZ") + _proj("XI") + _proj("XZ")
    rhs = scale(2, eye) - scale(half, mul(eye + sigma(2, "z"), eye + sigma(1, "x")))
    checks.append(IdentityCheck("column 1 sum = 2 - (1 + s2z)(1 + s1x)/2", lhs == rhs, frozenset({"IZ", "XI", "XZ"})))

    lhs = _proj("XZ") + _proj("ZX") + _proj("YY")
    expanded = scale(2, eye) - scale(half, eye + _op("XZ") + _op("ZX") + _op("YY"))
    a, b = eye + _op("XZ"), eye + _op("ZX")
    factored = scale(2, eye) - scale(half, mul(a, b))
    row3 = frozenset({"XZ", "ZX", "YY"})
    checks.append(IdentityCheck("row 3 sum = 2 - (1 + s1x s2z + s1z s2x + s1y s2y)/2", lhs == expanded, row3))
    checks.append(IdentityCheck("row 3 sum = 2 - (1 + s1x s2z)(1 + s1z s2x)/2", lhs == factored, row3))
    checks.append(IdentityCheck("(1 + s1x s2z) and (1 + s1z s2x) commute", commutes(a, b), row3))

    lhs = _proj("XX") + _proj("YY") + _proj("ZZ")
    dot = _op("XX") + _op("YY") + _op("ZZ")
    rhs = scale(2, eye) - scale(half, eye + dot)
    col3 = frozenset({"XX", "YY", "ZZ"})
    checks.append(IdentityCheck("column 3 sum = 2 - (1 + s1.s2)/2", lhs == rhs, col3))
    checks.append(
        IdentityCheck(
            "s1.s2 has eigenvalue 1 (x3) and -3 (x1)",
            integer_spectrum(dot, range(-3, 4)) == ((-3, 1), (1, 3)),
            col3,
        )
    )
    checks.append(
        IdentityCheck(
            "(s1x s2z)(s1z s2x) = s1y s2y",
            mul(_op("XZ"), _op("ZX")) == _op("YY"),
            row3,
        )
    )
    checks.append(
        IdentityCheck("(s1x s2x)(s1y s2y) = -(s1z s2z)", mul(_op("XX"), _op("YY")) == -_op("ZZ"), col3)
    )

    psi = singlet_state()
    for axis in "xyz":
        op = sigma(1, axis) + sigma(2, axis)
        letters = {axis.upper() + "I", "I" + axis.upper()}
        checks.append(
            IdentityCheck(f"(s1{axis} + s2{axis}) psi = 0", apply(op, psi).is_zero(), frozenset(letters), True)
        )
    checks.append(
        IdentityCheck(
            "(s1x s2z + s1z s2x) psi = 0",
            apply(_op("XZ") + _op("ZX"), psi).is_zero(),
            frozenset({"XZ", "ZX"}),
            True,
        )
    )
    checks.append(IdentityCheck("s1.s2 psi = -3 psi", _is_multiple(apply(dot, psi), psi, -3), frozenset(), True))
    return checks
