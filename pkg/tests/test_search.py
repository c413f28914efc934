import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ksverify.constraints import ParityConstraint, Scenario, mermin_peres_scenario, singlet_scenario
from ksverify.pauli import MagicSquare, mermin_square, observable_from_string, to_projector
from ksverify.search import (
    SAT,
    UNSAT,
    SearchLimitError,
    check_witness,
    criticality_scan,
    exhaustive_search,
    multiplicative_search,
    parity_argument,
)

MP = mermin_peres_scenario()
SINGLET = singlet_scenario()


def brute_force(s: Scenario) -> int:
    labels = s.labels
    n = 0
    for vals in itertools.product((0, 1), repeat=len(labels)):
        v = dict(zip(labels, vals))
        if all(sum(v[m] for m in c.members) in c.allowed_sums for c in s.constraints):
            n += 1
    return n


def sub_scenarios(s: Scenario):
    idx = range(len(s.constraints))
    return st.sets(st.sampled_from(list(idx))).map(
        lambda keep: s.with_constraints([s.constraints[i] for i in sorted(keep)])
    )


class TestExhaustive:
    def test_mermin_peres(self):
        cert = exhaustive_search(MP)
        assert (cert.verdict, cert.satisfying_count, cert.assignments_checked) == (UNSAT, 0, 512)
        assert cert.witness is None

    def test_singlet(self):
        cert = exhaustive_search(SINGLET)
        assert (cert.verdict, cert.satisfying_count, cert.assignments_checked) == (UNSAT, 0, 64)

    def test_unconstrained(self):
        s = Scenario("free", [to_projector(observable_from_string("a", "Z"))], [])
        cert = exhaustive_search(s)
        assert (cert.verdict, cert.satisfying_count, cert.assignments_checked) == (SAT, 2, 2)

    def test_violated_example_is_first_assignment(self):
        assignment, index = exhaustive_search(MP).violated_example
        assert set(assignment.values()) == {0}
        assert MP.constraints[index].name == "column 3"

    def test_deterministic(self):
        assert exhaustive_search(MP) == exhaustive_search(mermin_peres_scenario())

    def test_guard(self):
        s = Scenario("big", [to_projector(observable_from_string(f"q{i}", "Z")) for i in range(4)], [])
        with pytest.raises(SearchLimitError):
            exhaustive_search(s, limit=3)

    @given(sub_scenarios(MP))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, s):
        assert exhaustive_search(s).satisfying_count == brute_force(s)

    @given(sub_scenarios(SINGLET))
    @settings(max_examples=30, deadline=None)
    def test_witness_rechecks(self, s):
        cert = exhaustive_search(s)
        if cert.verdict == SAT:
            assert check_witness(s, cert.witness)
            assert all(c.is_satisfied_by(cert.witness) for c in s.constraints)

    @given(sub_scenarios(MP), st.integers(0, 5))
    @settings(max_examples=40, deadline=None)
    def test_monotone(self, s, extra):
        more = s.with_constraints(list(s.constraints) + [MP.constraints[extra]])
        assert exhaustive_search(more).satisfying_count <= exhaustive_search(s).satisfying_count


class TestParityArgument:
    def test_mermin_peres(self):
        proof = parity_argument(MP)
        assert proof.conclusive
        assert set(proof.occurrence_counts.values()) == {2}
        assert proof.odd_constraints == 1
        assert (proof.lhs_parity, proof.rhs_parity) == ("even", "odd")

    def test_singlet(self):
        proof = parity_argument(SINGLET)
        assert proof.conclusive
        assert set(proof.occurrence_counts.values()) == {2}
        assert proof.odd_constraints == 3

    def test_single_resolution_is_silent(self):
        a = to_projector(observable_from_string("a", "Z"))
        b = to_projector(observable_from_string("b", "-Z"))
        s = Scenario("pair", [a, b], [ParityConstraint((a.label, b.label), {1})])
        proof = parity_argument(s)
        assert not proof.conclusive and proof.lhs_parity is None
        assert exhaustive_search(s).verdict == SAT

    @given(st.one_of(sub_scenarios(MP), sub_scenarios(SINGLET)))
    @settings(max_examples=60, deadline=None)
    def test_never_disagrees_with_enumeration(self, s):
        if parity_argument(s).conclusive:
            assert exhaustive_search(s).verdict == UNSAT


class TestMultiplicative:
    def test_mermin_square(self):
        cert = multiplicative_search(mermin_square())
        assert (cert.verdict, cert.satisfying_count, cert.assignments_checked) == (UNSAT, 0, 512)

    def test_all_plus_square(self):
        rows = (("IZ", "ZI", "ZZ"), ("ZI", "IZ", "ZZ"), ("ZZ", "ZZ", "II"))
        cells = [[observable_from_string(f"c{r}{c}", s) for c, s in enumerate(row)] for r, row in enumerate(rows)]
        cert = multiplicative_search(MagicSquare(cells))
        assert cert.verdict == SAT
        assert set(cert.witness.values()) == {1}

    def test_single_row(self):
        cert = multiplicative_search(mermin_square(), lines=[0])
        assert (cert.verdict, cert.satisfying_count) == (SAT, 256)

    @pytest.mark.parametrize("dropped", range(6))
    def test_drop_one_line(self, dropped):
        cert = multiplicative_search(mermin_square(), [i for i in range(6) if i != dropped])
        assert cert.satisfying_count == 16


class TestCriticality:
    def test_mermin_peres(self):
        results = criticality_scan(MP)
        assert [i for i, _ in results] == list(range(6))
        assert all(c.verdict == SAT and c.satisfying_count == 16 for _, c in results)

    def test_singlet(self):
        results = criticality_scan(SINGLET)
        assert all(c.verdict == SAT and c.satisfying_count == 4 for _, c in results)

    def test_duplicate_constraint(self):
        s = MP.with_constraints(list(MP.constraints) + [MP.constraints[0]])
        results = criticality_scan(s)
        assert results[-1][1].verdict == UNSAT
        assert results[0][1].verdict == UNSAT
