"""Verification reports: assembly, JSON form and plain-text rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .constraints import SPECTRAL, ParityConstraint, identity_checks
from .exact import integer_spectrum, apply, is_hermitian, is_idempotent, is_involution
from .scenario_io import BuiltScenario, ScenarioFile
from .search import (
    SAT,
    UNSAT,
    Certificate,
    ParityProof,
    criticality_scan,
    exhaustive_search,
    multiplicative_search,
    parity_argument,
)

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "REPORT_SCHEMA",
    "DERIVE_SCHEMA",
    "Options",
    "build_report",
    "derive_report",
    "render_text",
    "render_derive_text",
    "dumps",
]


@dataclass(frozen=True)
class Options:
    enumerate: bool = True
    multiplicative: bool = False
    criticality: bool = False
    expect: Optional[str] = None


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _constraint_json(c: ParityConstraint) -> dict:
    return {
        "name": c.name,
        "members": sorted(c.members),
        "allowed_sums": sorted(c.allowed_sums),
        "origin": c.origin,
        "parity": c.parity,
        "spectrum": [list(kv) for kv in c.spectrum] if c.spectrum is not None else None,
    }


def _certificate_json(cert: Certificate) -> dict:
    violated = None
    if cert.violated_example is not None:
        assignment, index = cert.violated_example
        violated = {"assignment": assignment, "constraint_index": index}
    return {
        "method": cert.method,
        "verdict": cert.verdict,
        "variables": list(cert.variables),
        "assignments_checked": cert.assignments_checked,
        "satisfying_count": cert.satisfying_count,
        "witness": cert.witness,
        "violated_example": violated,
    }


def _proof_json(proof: ParityProof) -> dict:
    return {
        "occurrence_counts": proof.occurrence_counts,
        "constraint_parities": list(proof.constraint_parities),
        "odd_constraints": proof.odd_constraints,
        "lhs_parity": proof.lhs_parity,
        "rhs_parity": proof.rhs_parity,
        "conclusive": proof.conclusive,
    }


def _is_singlet(state) -> bool:
    if state is None or state.dim != 4:
        return False
    a, b, c, d = state.entries
    return a.is_zero() and d.is_zero() and not b.is_zero() and b == -c


def _validations(built: BuiltScenario) -> list[dict]:
    s = built.scenario
    out = []

    def record(name, passed):
        out.append({"name": name, "passed": bool(passed)})

    for p in s.projectors:
        o = p.source
        record(f"{o.label} = {o.string} is a Hermitian involution", is_hermitian(o.matrix) and is_involution(o.matrix))
        record(f"{p.label} = (I - {o.label})/2 is a Hermitian idempotent", is_hermitian(p.matrix) and is_idempotent(p.matrix))
    for i, c in enumerate(s.constraints):
        tag = f"constraint {i}" + (f" ({c.name})" if c.name else "")
        if c.origin == SPECTRAL:
            replay = integer_spectrum(c.sum_matrix, range(len(c.members) + 1))
            record(f"{tag}: spectrum multiplicities sum to {c.sum_matrix.dim}", sum(m for _, m in replay) == c.sum_matrix.dim)
            record(f"{tag}: eigenvalues {sorted(c.allowed_sums)} share one parity", {k for k, _ in replay} == c.allowed_sums)
        else:
            (k,) = c.allowed_sums
            record(f"{tag}: state is an eigenvector of the sum with eigenvalue {k}", apply(c.sum_matrix, s.state) == s.state.scale(k))
    if built.square is not None:
        signs = " ".join("+" if x > 0 else "-" for x in built.square.line_signs)
        record(f"square lines commute; products (rows, columns) = {signs}", True)
    return out


def _identities(built: BuiltScenario) -> list[dict]:
    s = built.scenario
    strings = {p.source.string.letters for p in s.projectors}
    if {len(x) for x in strings} != {2}:
        return []
    singlet = _is_singlet(s.state)
    out = []
    for check in identity_checks():
        if check.needs_singlet and not singlet:
            continue
        if not check.needs and not check.needs_singlet:
            continue
        if check.needs <= strings:
            out.append({"name": check.name, "passed": check.passed})
    return out


def build_report(sf: ScenarioFile, built: BuiltScenario, options: Options = Options()) -> dict:
    """Run the full pipeline on a built scenario and collect every number."""
    s = built.scenario
    problems = []
    validations = _validations(built)
    identities = _identities(built)
    problems += [f"validation failed: {v['name']}" for v in validations if not v["passed"]]
    problems += [f"identity failed: {v['name']}" for v in identities if not v["passed"]]

    proof = parity_argument(s)
    cert = exhaustive_search(s) if options.enumerate else None
    if cert is not None and proof.conclusive and cert.verdict == SAT:
        problems.append("parity argument and enumeration disagree")

    if cert is not None:
        verdict = cert.verdict
    elif proof.conclusive:
        verdict = UNSAT
    else:
        verdict = "UNKNOWN"

    mult = None
    if options.multiplicative and built.square is not None:
        mult = _certificate_json(multiplicative_search(built.square))

    crit = None
    if options.criticality and verdict == UNSAT:
        crit = [
            {
                "dropped": i,
                "name": s.constraints[i].name,
                "verdict": c.verdict,
                "satisfying_count": c.satisfying_count,
                "assignments_checked": c.assignments_checked,
            }
            for i, c in criticality_scan(s)
        ]

    if options.expect is not None and options.expect.upper() != verdict:
        problems.append(f"expected {options.expect.upper()}, got {verdict}")

    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": {
            "name": s.name,
            "qubits": sf.qubits,
            "dimension": 2 ** sf.qubits,
            "projector_count": len(s.projectors),
            "constraint_count": len(s.constraints),
            "projectors": [{"label": p.label, "pauli": str(p.source.string)} for p in s.projectors],
            "state": [z.to_ints() for z in s.state] if s.state is not None else None,
        },
        "validations": validations,
        "identities": identities,
        "constraints": [_constraint_json(c) for c in s.constraints],
        "skipped_contexts": [
            {
                "kind": k.kind,
                "index": k.index,
                "members": sorted(k.members),
                "reason": k.reason,
                "spectrum": [list(kv) for kv in k.spectrum] if k.spectrum is not None else None,
            }
            for k in built.skipped
        ],
        "parity_proof": _proof_json(proof),
        "enumeration": _certificate_json(cert) if cert is not None else None,
        "multiplicative": mult,
        "criticality": crit,
        "verdict": verdict,
        "status": "mismatch" if problems else "ok",
        "problems": problems,
    }


def derive_report(built: BuiltScenario) -> dict:
    s = built.scenario
    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": s.name,
        "constraints": [_constraint_json(c) for c in s.constraints],
        "skipped_contexts": [
            {"kind": k.kind, "index": k.index, "members": sorted(k.members), "reason": k.reason}
            for k in built.skipped
        ],
    }


def _constraint_line(i: int, c: dict) -> str:
    sums = " or ".join(str(k) for k in c["allowed_sums"])
    lhs = " + ".join(f"v({m})" for m in c["members"])
    name = f" [{c['name']}]" if c["name"] else ""
    return f"  {i}. {lhs} = {sums}   ({c['origin']}, {c['parity']}){name}"


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" if n == 1 else f"{n} {word}s"


def render_text(report: dict) -> str:
    sc = report["scenario"]
    lines = [
        f"scenario {sc['name']}: {_plural(sc['projector_count'], 'projector')} in dimension {sc['dimension']}, "
        f"{_plural(sc['constraint_count'], 'constraint')}",
    ]
    failed = [v for v in report["validations"] + report["identities"] if not v["passed"]]
    lines.append(
        f"validations: {len(report['validations'])} checked, identities: {len(report['identities'])} checked, "
        f"{len(failed)} failed"
    )
    for v in report["identities"]:
        lines.append(f"  [{'ok' if v['passed'] else 'FAIL'}] {v['name']}")
    lines.append("constraints:")
    for i, c in enumerate(report["constraints"]):
        lines.append(_constraint_line(i, c))
    for k in report["skipped_contexts"]:
        lines.append(f"  skipped {k['kind']} {k['index']} ({' + '.join(k['members'])}): {k['reason']}")
    p = report["parity_proof"]
    if p["conclusive"]:
        lines.append(
            f"parity argument: conclusive (every value appears an even number of times; "
            f"{p['odd_constraints']} odd right-hand side(s))"
        )
    else:
        lines.append("parity argument: inconclusive")
    e = report["enumeration"]
    if e is not None:
        lines.append(
            f"enumeration: {e['verdict']}, {e['satisfying_count']} of {e['assignments_checked']} assignments satisfy"
        )
        if e["witness"] is not None:
            lines.append("  witness: " + ", ".join(f"{k}={v}" for k, v in e["witness"].items()))
    else:
        lines.append("enumeration: skipped")
    m = report["multiplicative"]
    if m is not None:
        lines.append(
            f"multiplicative: {m['verdict']}, {m['satisfying_count']} of {m['assignments_checked']} sign assignments satisfy"
        )
    if report["criticality"] is not None:
        lines.append("criticality:")
        for r in report["criticality"]:
            name = f" ({r['name']})" if r["name"] else ""
            lines.append(f"  drop {r['dropped']}{name}: {r['verdict']}, {r['satisfying_count']} satisfying")
    lines.append(f"verdict: {report['verdict']}")
    for prob in report["problems"]:
        lines.append(f"problem: {prob}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"


def render_derive_text(report: dict) -> str:
    lines = [f"scenario {report['scenario']}:"]
    for i, c in enumerate(report["constraints"]):
        lines.append(_constraint_line(i, c))
    for k in report["skipped_contexts"]:
        lines.append(f"  skipped {k['kind']} {k['index']} ({' + '.join(k['members'])}): {k['reason']}")
    return "\n".join(lines) + "\n"


_NAMED_CHECK = {
    "type": "object",
    "required": ["name", "passed"],
    "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"}},
    "additionalProperties": False,
}

_SPECTRUM = {
    "type": ["array", "null"],
    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
}

_CONSTRAINT = {
    "type": "object",
    "required": ["name", "members", "allowed_sums", "origin", "parity", "spectrum"],
    "properties": {
        "name": {"type": "string"},
        "members": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "allowed_sums": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "origin": {"enum": ["spectral", "state-eigenvector"]},
        "parity": {"enum": ["even", "odd"]},
        "spectrum": _SPECTRUM,
    },
    "additionalProperties": False,
}

_ASSIGNMENT = {"type": "object", "additionalProperties": {"type": "integer"}}

_CERTIFICATE = {
    "type": ["object", "null"],
    "required": [
        "method", "verdict", "variables", "assignments_checked",
        "satisfying_count", "witness", "violated_example",
    ],
    "properties": {
        "method": {"enum": ["enumeration", "multiplicative"]},
        "verdict": {"enum": ["SAT", "UNSAT"]},
        "variables": {"type": "array", "items": {"type": "string"}},
        "assignments_checked": {"type": "integer", "minimum": 1},
        "satisfying_count": {"type": "integer", "minimum": 0},
        "witness": {"oneOf": [{"type": "null"}, _ASSIGNMENT]},
        "violated_example": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["assignment", "constraint_index"],
                    "properties": {
                        "assignment": _ASSIGNMENT,
                        "constraint_index": {"type": "integer", "minimum": 0},
                    },
                },
            ]
        },
    },
}

_SKIPPED = {
    "type": "object",
    "required": ["kind", "index", "members", "reason"],
    "properties": {
        "kind": {"type": "string"},
        "index": {"type": "integer"},
        "members": {"type": "array", "items": {"type": "string"}},
        "reason": {"type": "string"},
        "spectrum": _SPECTRUM,
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ksverify verification report",
    "type": "object",
    "required": [
        "schema_version", "scenario", "validations", "identities", "constraints",
        "skipped_contexts", "parity_proof", "enumeration", "multiplicative",
        "criticality", "verdict", "status", "problems",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "scenario": {
            "type": "object",
            "required": ["name", "qubits", "dimension", "projector_count", "constraint_count", "projectors", "state"],
            "properties": {
                "name": {"type": "string"},
                "qubits": {"type": "integer", "minimum": 1},
                "dimension": {"type": "integer", "minimum": 2},
                "projector_count": {"type": "integer", "minimum": 1},
                "constraint_count": {"type": "integer", "minimum": 0},
                "projectors": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["label", "pauli"],
                        "properties": {"label": {"type": "string"}, "pauli": {"type": "string", "pattern": "^[+-][IXYZ]+$"}},
                    },
                },
                "state": {
                    "type": ["array", "null"],
                    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
                },
            },
        },
        "validations": {"type": "array", "items": _NAMED_CHECK},
        "identities": {"type": "array", "items": _NAMED_CHECK},
        "constraints": {"type": "array", "items": _CONSTRAINT},
        "skipped_contexts": {"type": "array", "items": _SKIPPED},
        "parity_proof": {
            "type": "object",
            "required": ["occurrence_counts", "constraint_parities", "odd_constraints", "lhs_parity", "rhs_parity", "conclusive"],
            "properties": {
                "occurrence_counts": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
                "constraint_parities": {"type": "array", "items": {"enum": ["even", "odd"]}},
                "odd_constraints": {"type": "integer", "minimum": 0},
                "lhs_parity": {"enum": ["even", None]},
                "rhs_parity": {"enum": ["even", "odd"]},
                "conclusive": {"type": "boolean"},
            },
        },
        "enumeration": _CERTIFICATE,
        "multiplicative": _CERTIFICATE,
        "criticality": {
            "type": ["array", "null"],
            "items": {
                "type": "object",
                "required": ["dropped", "name", "verdict", "satisfying_count", "assignments_checked"],
            },
        },
        "verdict": {"enum": ["SAT", "UNSAT", "UNKNOWN"]},
        "status": {"enum": ["ok", "mismatch"]},
        "problems": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

DERIVE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ksverify derived constraints",
    "type": "object",
    "required": ["schema_version", "scenario", "constraints", "skipped_contexts"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "scenario": {"type": "string"},
        "constraints": {"type": "array", "items": _CONSTRAINT},
        "skipped_contexts": {"type": "array", "items": _SKIPPED},
    },
    "additionalProperties": False,
}
