import json
from pathlib import Path

import jsonschema
import pytest

from ksverify.cli import main
from ksverify.report import DERIVE_SCHEMA, REPORT_SCHEMA

DATA = Path(__file__).parent / "data"
MALFORMED = DATA / "malformed"

# file -> substring the diagnostic must contain (its location)
MALFORMED_LOCATIONS = {
    "truncated.json": "line 5, column 1",
    "trailing_comma.json": "line 1, column 57",
    "top_level_array.json": "$:",
    "missing_contexts.json": "contexts:",
    "unknown_key.json": "colour:",
    "qubits_bool.json": "qubits:",
    "bad_letter.json": "observables[0].pauli:",
    "wrong_length.json": "observables[0].pauli:",
    "duplicate_id.json": "observables[1].id:",
    "unknown_id.json": "contexts[0][1]:",
    "repeated_member.json": "contexts[0][1]:",
    "float_state.json": "state[1]:",
    "state_wrong_length.json": "state:",
    "zero_denominator.json": "state[0]:",
    "state_contexts_without_state.json": "state_contexts:",
    "non_commuting.json": "contexts[0]:",
    "not_eigenvector.json": "state_contexts[0]:",
    "non_commuting_square.json": "square:",
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("builtin, projectors, constraints, checked", [
    ("mermin-peres", 9, 6, 512),
    ("singlet", 6, 5, 64),
])
def test_verify_builtin_json(capsys, builtin, projectors, constraints, checked):
    code, out, _ = run(capsys, "verify", "--builtin", builtin, "--format", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["scenario"]["projector_count"] == projectors
    assert report["scenario"]["constraint_count"] == constraints
    assert report["parity_proof"]["conclusive"]
    assert report["enumeration"]["verdict"] == "UNSAT"
    assert report["enumeration"]["satisfying_count"] == 0
    assert report["enumeration"]["assignments_checked"] == checked
    assert all(v["passed"] for v in report["validations"] + report["identities"])


def test_verify_all_flags(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "mermin-peres", "--format", "json",
                       "--multiplicative", "--criticality", "--expect", "unsat")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["multiplicative"]["satisfying_count"] == 0
    assert [r["verdict"] for r in report["criticality"]] == ["SAT"] * 6


def test_singlet_identities_include_annihilation(capsys):
    _, out, _ = run(capsys, "verify", "--builtin", "singlet", "--format", "json")
    names = [v["name"] for v in json.loads(out)["identities"]]
    assert "(s1x s2z + s1z s2x) psi = 0" in names
    assert "(s1x + s2x) psi = 0" in names


def test_skip_enumeration_uses_parity(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "singlet", "--format", "json", "--skip-enumeration")
    report = json.loads(out)
    assert code == 0 and report["enumeration"] is None and report["verdict"] == "UNSAT"


def test_expect_mismatch_exits_one(capsys):
    code, out, err = run(capsys, "verify", "--builtin", "singlet", "--expect", "sat")
    assert code == 1
    assert "expected SAT, got UNSAT" in err
    assert "status: mismatch" in out


def test_text_report(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "mermin-peres")
    assert code == 0
    assert "v(P_1x2x) + v(P_1y2y) + v(P_1z2z) = 1 or 3" in out
    assert "enumeration: UNSAT, 0 of 512 assignments satisfy" in out


def test_trivial_file(capsys):
    code, out, _ = run(capsys, "verify", "--file", str(DATA / "trivial.json"), "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert code == 0
    assert report["constraints"] == []
    assert report["skipped_contexts"][0]["reason"] == "mixed parity"
    assert report["verdict"] == "SAT" and report["enumeration"]["satisfying_count"] == 2


@pytest.mark.parametrize("builtin, sums", [
    ("mermin-peres", [[0, 2]] * 5 + [[1, 3]]),
    ("singlet", [[0, 2]] * 2 + [[1]] * 3),
])
def test_derive(capsys, builtin, sums):
    code, out, _ = run(capsys, "derive", "--builtin", builtin)
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, DERIVE_SCHEMA)
    assert [c["allowed_sums"] for c in report["constraints"]] == sums


def test_derive_text(capsys):
    code, out, _ = run(capsys, "derive", "--builtin", "singlet", "--format", "text")
    assert code == 0 and "v(P_1x) + v(P_2x) = 1" in out


def test_derive_non_commuting_names_pair(capsys):
    code, _, err = run(capsys, "derive", "--file", str(MALFORMED / "non_commuting.json"))
    assert code == 2
    assert "P_X and P_Z" in err


@pytest.mark.parametrize("builtin", ["mermin-peres", "singlet"])
def test_round_trip_byte_identical(capsys, tmp_path, builtin):
    _, exported, _ = run(capsys, "export", "--builtin", builtin)
    path = tmp_path / "scenario.json"
    path.write_text(exported)
    flags = ["--format", "json", "--multiplicative", "--criticality"]
    _, direct, _ = run(capsys, "verify", "--builtin", builtin, *flags)
    _, from_file, _ = run(capsys, "verify", "--file", str(path), *flags)
    assert direct == from_file


@pytest.mark.parametrize("name", sorted(MALFORMED_LOCATIONS))
def test_malformed_corpus(capsys, name):
    code, out, err = run(capsys, "verify", "--file", str(MALFORMED / name))
    assert code == 2
    assert out == ""
    assert MALFORMED_LOCATIONS[name] in err
    assert name in err


def test_corpus_is_complete():
    assert {p.name for p in MALFORMED.glob("*.json")} == set(MALFORMED_LOCATIONS)


def test_bad_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == 2
