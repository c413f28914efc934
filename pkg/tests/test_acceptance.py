"""Exit criteria.  Every check is exact (tolerance 0)."""
import itertools
import json
import random
import time
from fractions import Fraction
from functools import reduce
from pathlib import Path

import jsonschema
import pytest

from ksverify.cli import main
from ksverify.constraints import SPECTRAL, mermin_peres_scenario, singlet_scenario
from ksverify.exact import apply, commutes, identity, integer_spectrum, is_hermitian, is_involution, mul, scale
from ksverify.pauli import PauliString, mermin_square, sigma, singlet_state, to_projector
from ksverify.report import REPORT_SCHEMA
from ksverify.search import UNSAT, SAT, criticality_scan, exhaustive_search, multiplicative_search, parity_argument

EYE = identity(4)
HALF = Fraction(1, 2)
MALFORMED = Path(__file__).parent / "data" / "malformed"


def op(word):
    return PauliString(word).matrix()


def proj(word):
    return scale(HALF, EYE - op(word))


@pytest.mark.criterion(1, "magic-square algebra: Hermitian involutions, commuting lines, line products")
def test_magic_square_algebra():
    sq = mermin_square()
    assert all(is_hermitian(o.matrix) and is_involution(o.matrix) for o in sq.observables())
    for line in sq.lines():
        for a, b in itertools.combinations(line, 2):
            assert commutes(a.matrix, b.matrix)
    products = [reduce(mul, (o.matrix for o in line)) for line in sq.lines()]
    assert products[:3] == [EYE, EYE, EYE]
    assert products[3:] == [EYE, EYE, scale(-1, EYE)]
    assert mul(op("XX"), op("YY")) == scale(-1, op("ZZ"))


@pytest.mark.criterion(2, "operator identities hold as exact matrix equalities")
def test_identities():
    two = scale(2, EYE)
    assert proj("IZ") + proj("XI") + proj("XZ") == two - scale(HALF, mul(EYE + sigma(2, "z"), EYE + sigma(1, "x")))
    row3 = proj("XZ") + proj("ZX") + proj("YY")
    assert row3 == two - scale(HALF, EYE + op("XZ") + op("ZX") + op("YY"))
    left, right = EYE + op("XZ"), EYE + op("ZX")
    assert row3 == two - scale(HALF, mul(left, right))
    assert commutes(left, right)
    assert proj("XX") + proj("YY") + proj("ZZ") == two - scale(HALF, EYE + op("XX") + op("YY") + op("ZZ"))


@pytest.mark.criterion(3, "integer spectra {0,2}, {1,3} and sigma.sigma = {1 x3, -3 x1}")
def test_spectra():
    sq = mermin_square()
    for line, want in zip(sq.lines(), [((0, 1), (2, 3))] * 5 + [((1, 3), (3, 1))]):
        total = reduce(lambda a, b: a + b, (to_projector(o).matrix for o in line))
        spec = integer_spectrum(total, range(4))
        assert spec == want
        assert sum(m for _, m in spec) == 4
    dot = op("XX") + op("YY") + op("ZZ")
    assert integer_spectrum(dot, range(-3, 4)) == ((-3, 1), (1, 3))


@pytest.mark.criterion(4, "state-independent contradiction: 0 of 512, parity proof conclusive")
def test_state_independent():
    s = mermin_peres_scenario()
    assert len(s.constraints) == 6 and len(s.projectors) == 9
    cert = exhaustive_search(s)
    assert cert.assignments_checked == 512 and cert.satisfying_count == 0 and cert.verdict == UNSAT
    proof = parity_argument(s)
    assert proof.conclusive
    assert set(proof.occurrence_counts.values()) == {2}
    assert proof.odd_constraints == 1


@pytest.mark.criterion(5, "singlet contradiction: annihilation identities, 0 of 64, three odd constraints")
def test_state_specific():
    psi = singlet_state()
    for axis in "xyz":
        assert apply(sigma(1, axis) + sigma(2, axis), psi).is_zero()
    assert apply(op("XZ") + op("ZX"), psi).is_zero()
    s = singlet_scenario()
    assert len(s.constraints) == 5 and len(s.projectors) == 6
    cert = exhaustive_search(s)
    assert cert.assignments_checked == 64 and cert.satisfying_count == 0 and cert.verdict == UNSAT
    proof = parity_argument(s)
    assert proof.conclusive and proof.odd_constraints == 3


@pytest.mark.criterion(6, "multiplicative variant: 0 of 512 sign assignments")
def test_multiplicative():
    cert = multiplicative_search(mermin_square())
    assert cert.assignments_checked == 512 and cert.satisfying_count == 0


@pytest.mark.criterion(7, "criticality: every drop-one scenario is SAT")
@pytest.mark.parametrize("build", [mermin_peres_scenario, singlet_scenario])
def test_criticality(build):
    s = build()
    results = criticality_scan(s)
    assert len(results) == len(s.constraints)
    assert all(cert.verdict == SAT for _, cert in results)


@pytest.mark.criterion(8, "prover cross-validation on 100 random sub-scenarios, 0 disagreements")
def test_cross_validation():
    rng = random.Random(20261015)
    s = mermin_peres_scenario()
    disagreements = 0
    conclusive = 0
    for _ in range(100):
        keep = [c for c in s.constraints if rng.random() < 0.5]
        sub = s.with_constraints(keep)
        if parity_argument(sub).conclusive:
            conclusive += 1
            if exhaustive_search(sub).verdict != UNSAT:
                disagreements += 1
    full = parity_argument(s).conclusive and exhaustive_search(s).verdict == UNSAT
    assert disagreements == 0 and full


@pytest.mark.criterion(9, "CLI: schema-valid json with exit 0; malformed corpus exits 2 with locations")
def test_cli_contract(capsys):
    for builtin in ("mermin-peres", "singlet"):
        code = main(["verify", "--builtin", builtin, "--format", "json"])
        out, _ = capsys.readouterr()
        assert code == 0
        jsonschema.validate(json.loads(out), REPORT_SCHEMA)
    corpus = sorted(MALFORMED.glob("*.json"))
    assert len(corpus) >= 10
    for path in corpus:
        code = main(["verify", "--file", str(path)])
        out, err = capsys.readouterr()
        assert code == 2, path.name
        prefix = f"ksverify: error: {path}: "
        assert err.startswith(prefix) and out == ""
        location, _, message = err[len(prefix):].partition(": ")
        assert location and message.strip(), path.name


@pytest.mark.criterion(0, "runtime: the search workload finishes in under 10 s")
def test_runtime_budget():
    start = time.perf_counter()
    exhaustive_search(mermin_peres_scenario())
    exhaustive_search(singlet_scenario())
    multiplicative_search(mermin_square())
    criticality_scan(mermin_peres_scenario())
    assert time.perf_counter() - start < 10
