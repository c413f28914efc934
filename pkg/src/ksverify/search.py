"""Unsatisfiability provers: parity counting and exhaustive enumeration.

Enumeration order is fixed so results are reproducible: variables are the
sorted labels, and assignment number ``n`` gives variable ``j`` the value of
bit ``j`` of ``n``.  The reported witness and violated example are always the
lowest-numbered ones.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .constraints import Scenario
from .pauli import MagicSquare

__all__ = [
    "SAT",
    "UNSAT",
    "MAX_VARIABLES",
    "Certificate",
    "ParityProof",
    "SearchLimitError",
    "exhaustive_search",
    "parity_argument",
    "multiplicative_search",
    "criticality_scan",
    "check_witness",
]

SAT = "SAT"
UNSAT = "UNSAT"
MAX_VARIABLES = 30


class SearchLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Outcome of an exhaustive search.

    ``violated_example`` is ``(assignment, constraint_index)`` for the first
    assignment that fails, naming the first constraint it breaks.
    """

    verdict: str
    variables: tuple[str, ...]
    satisfying_count: int
    assignments_checked: int
    witness: Optional[dict] = None
    violated_example: Optional[tuple[dict, int]] = None
    method: str = "enumeration"

    def __post_init__(self):
        if self.verdict == SAT:
            if self.witness is None or self.satisfying_count <= 0:
                raise ValueError("a SAT certificate needs a witness")
        elif self.verdict == UNSAT:
            if self.witness is not None or self.satisfying_count != 0:
                raise ValueError("an UNSAT certificate cannot carry a witness")
            if self.assignments_checked != 2 ** len(self.variables):
                raise ValueError("an UNSAT certificate must cover every assignment")
        else:
            raise ValueError(f"unknown verdict {self.verdict!r}")


@dataclass(frozen=True)
class ParityProof:
    occurrence_counts: dict = field(hash=False)
    constraint_parities: tuple[str, ...]
    lhs_parity: Optional[str]
    rhs_parity: str
    conclusive: bool

    @property
    def odd_constraints(self) -> int:
        return sum(1 for p in self.constraint_parities if p == "odd")


def _enumerate(variables, checks, values=(0, 1)):
    """Run all ``2**len(variables)`` assignments through ``checks``.

    ``checks`` is a list of predicates over a tuple of values indexed like
    ``variables``; returns counts plus the first witness and violation.
    """
    n = len(variables)
    if n > MAX_VARIABLES:
        raise SearchLimitError(
            f"refusing to enumerate 2^{n} assignments; the limit is {MAX_VARIABLES} variables"
        )
    satisfying = 0
    witness = None
    violated = None
    total = 1 << n
    for code in range(total):
        vals = tuple(values[(code >> j) & 1] for j in range(n))
        bad = next((i for i, check in enumerate(checks) if not check(vals)), None)
        if bad is None:
            satisfying += 1
            if witness is None:
                witness = dict(zip(variables, vals))
        elif violated is None:
            violated = (dict(zip(variables, vals)), bad)
    return satisfying, total, witness, violated


def exhaustive_search(s: Scenario, limit: int = MAX_VARIABLES) -> Certificate:
    """Try every 0/1 assignment to the scenario's projectors."""
    variables = tuple(sorted(s.labels))
    if len(variables) > limit:
        raise SearchLimitError(
            f"refusing to enumerate 2^{len(variables)} assignments; the limit is {limit} variables"
        )
    position = {v: j for j, v in enumerate(variables)}
    checks = []
    for c in s.constraints:
        idx = tuple(position[m] for m in c.members)
        allowed = c.allowed_sums
        checks.append(lambda vals, idx=idx, allowed=allowed: sum(vals[i] for i in idx) in allowed)
    satisfying, total, witness, violated = _enumerate(variables, checks)
    return Certificate(
        SAT if satisfying else UNSAT, variables, satisfying, total, witness, violated
    )


def check_witness(s: Scenario, values: Mapping[str, int]) -> bool:
    """Re-check an assignment against every constraint of ``s``."""
    if set(values) != set(s.labels) or any(v not in (0, 1) for v in values.values()):
        return False
    return all(c.is_satisfied_by(values) for c in s.constraints)


def parity_argument(s: Scenario) -> ParityProof:
    """Count how often each value occurs across all constraint left-hand sides.

    If every value occurs an even number of times the left-hand sides add up
    to an even number; if an odd number of constraints demand an odd count the
    right-hand sides add up to an odd number, and no assignment can exist.
    An inconclusive result says nothing about satisfiability.
    """
    counts = Counter({label: 0 for label in s.labels})
    for c in s.constraints:
        counts.update(c.members)
    parities = []
    for c in s.constraints:
        if len({k % 2 for k in c.allowed_sums}) != 1:
            raise ValueError(f"constraint {c.name or c.members} has allowed sums of mixed parity")
        parities.append(c.parity)
    all_even = all(n % 2 == 0 for n in counts.values())
    odd = sum(1 for p in parities if p == "odd")
    rhs = "odd" if odd % 2 else "even"
    return ParityProof(
        occurrence_counts=dict(sorted(counts.items())),
        constraint_parities=tuple(parities),
        lhs_parity="even" if all_even else None,
        rhs_parity=rhs,
        conclusive=all_even and rhs == "odd",
    )


def multiplicative_search(square: MagicSquare, lines: Optional[Sequence[int]] = None) -> Certificate:
    """Look for +-1 values on the nine cells obeying the line product signs.

    ``lines`` selects which of the six lines (rows 1-3 then columns 1-3) are
    imposed; by default all of them.  Signs come from the verified matrix
    products stored on the square.
    """
    if lines is None:
        lines = range(6)
    lines = list(lines)
    all_lines = square.lines()
    variables = tuple(sorted(o.label for o in square.observables()))
    if len(set(variables)) != 9:
        raise ValueError("magic square cells need distinct labels")
    position = {v: j for j, v in enumerate(variables)}
    checks = []
    for i in lines:
        idx = tuple(position[o.label] for o in all_lines[i])
        sign = square.line_signs[i]
        checks.append(lambda vals, idx=idx, sign=sign: vals[idx[0]] * vals[idx[1]] * vals[idx[2]] == sign)
    satisfying, total, witness, violated = _enumerate(variables, checks, values=(1, -1))
    if violated is not None:
        violated = (violated[0], lines[violated[1]])
    return Certificate(
        SAT if satisfying else UNSAT, variables, satisfying, total, witness, violated, "multiplicative"
    )


def criticality_scan(s: Scenario) -> list[tuple[int, Certificate]]:
    """Re-run the enumeration with each constraint dropped in turn."""
    return [(i, exhaustive_search(s.without_constraint(i))) for i in range(len(s.constraints))]
