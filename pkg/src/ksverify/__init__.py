"""Exact verification of additive (parity-rule) Kochen-Specker contradictions.

Nine two-qubit Pauli observables from the Mermin-Peres square are turned into
projectors; every commuting line yields an even/odd rule on the number of
"yes" answers, and no 0/1 assignment can satisfy all of them.  A prepared
singlet state pins extra pair sums and the same argument goes through with
six projectors.
"""
from .constraints import (
    ParityConstraint,
    Scenario,
    extract_constraint,
    identity_checks,
    mermin_peres_scenario,
    singlet_scenario,
    state_constraint,
)
from .exact import GaussianRational, Matrix, Vec, integer_spectrum, kernel_dimension, tensor
from .pauli import (
    MagicSquare,
    Observable,
    PauliString,
    Projector,
    mermin_square,
    observable_from_string,
    pauli_matrix,
    singlet_state,
    to_projector,
)
from .search import (
    Certificate,
    ParityProof,
    criticality_scan,
    exhaustive_search,
    multiplicative_search,
    parity_argument,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "Matrix",
    "Vec",
    "tensor",
    "kernel_dimension",
    "integer_spectrum",
    "PauliString",
    "Observable",
    "Projector",
    "MagicSquare",
    "pauli_matrix",
    "observable_from_string",
    "to_projector",
    "mermin_square",
    "singlet_state",
    "ParityConstraint",
    "Scenario",
    "extract_constraint",
    "state_constraint",
    "identity_checks",
    "mermin_peres_scenario",
    "singlet_scenario",
    "Certificate",
    "ParityProof",
    "exhaustive_search",
    "parity_argument",
    "multiplicative_search",
    "criticality_scan",
]
