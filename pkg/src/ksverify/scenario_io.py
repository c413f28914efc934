"""Scenario files: parsing, validation, building and serialization.

A scenario file is a JSON object::

    {
      "name": "my-scenario",
      "qubits": 2,
      "observables": [{"id": "A", "pauli": "+XZ"}, ...],
      "contexts": [["A", "B", "C"], {"name": "col", "ids": ["A", "D"]}],
      "state": [[0, 1, 0, 1], [1, 1, 0, 1], [-1, 1, 0, 1], [0, 1, 0, 1]],
      "state_contexts": [["A", "D"]],
      "square": [["A", "B", "C"], ["D", "E", "F"], ["G", "H", "J"]]
    }

Only ``qubits``, ``observables`` and ``contexts`` are required.  State
entries are ``[re_num, re_den, im_num, im_den]``; floats are rejected
everywhere.  Each observable ``A`` yields the projector ``P_A``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .constraints import (
    SPECTRAL,
    STATE_EIGENVECTOR,
    MixedParityError,
    NonCommutingError,
    NotEigenvectorError,
    ParityConstraint,
    Scenario,
    extract_constraint,
    mermin_peres_scenario,
    singlet_scenario,
    state_constraint,
)
from .exact import GaussianRational, Vec
from .pauli import (
    MagicSquare,
    MagicSquareError,
    PauliString,
    mermin_square,
    observable_from_string,
    to_projector,
)

__all__ = [
    "MAX_QUBITS",
    "ScenarioFileError",
    "Context",
    "ScenarioFile",
    "SkippedContext",
    "BuiltScenario",
    "parse_scenario_data",
    "load_scenario_file",
    "build_scenario",
    "scenario_to_file",
    "builtin_file",
    "BUILTINS",
]

MAX_QUBITS = 4
PROJECTOR_PREFIX = "P_"
_TOP_LEVEL_KEYS = {
    "schema_version", "name", "description", "qubits", "observables",
    "contexts", "state", "state_contexts", "square",
}


class ScenarioFileError(ValueError):
    """Bad scenario input; ``location`` names the line/column or field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.message = message
        self.location = location


@dataclass(frozen=True)
class Context:
    ids: tuple[str, ...]
    name: str = ""


@dataclass(frozen=True)
class ScenarioFile:
    qubits: int
    observables: tuple[tuple[str, PauliString], ...]
    contexts: tuple[Context, ...]
    name: str = "scenario"
    state: Optional[tuple[GaussianRational, ...]] = None
    state_contexts: tuple[Context, ...] = ()
    square: Optional[tuple[tuple[str, ...], ...]] = None

    def to_json(self) -> dict:
        def ctx(c: Context):
            return {"name": c.name, "ids": list(c.ids)} if c.name else list(c.ids)

        data: dict[str, Any] = {
            "name": self.name,
            "qubits": self.qubits,
            "observables": [{"id": i, "pauli": str(p)} for i, p in self.observables],
            "contexts": [ctx(c) for c in self.contexts],
        }
        if self.state is not None:
            data["state"] = [z.to_ints() for z in self.state]
        if self.state_contexts:
            data["state_contexts"] = [ctx(c) for c in self.state_contexts]
        if self.square is not None:
            data["square"] = [list(row) for row in self.square]
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _parse_context(raw, where: str, known: set[str]) -> Context:
    name = ""
    ids = raw
    if isinstance(raw, dict):
        extra = set(raw) - {"name", "ids"}
        if extra:
            raise ScenarioFileError(f"unknown key {sorted(extra)[0]!r}", where)
        if "ids" not in raw:
            raise ScenarioFileError("missing 'ids'", where)
        name = raw.get("name", "")
        if not isinstance(name, str):
            raise ScenarioFileError("'name' must be a string", f"{where}.name")
        ids = raw["ids"]
        where = f"{where}.ids"
    if not isinstance(ids, list) or not ids:
        raise ScenarioFileError("a context must be a nonempty list of observable ids", where)
    seen = set()
    for j, i in enumerate(ids):
        if not isinstance(i, str):
            raise ScenarioFileError("observable ids must be strings", f"{where}[{j}]")
        if i not in known:
            raise ScenarioFileError(f"unknown observable id {i!r}", f"{where}[{j}]")
        if i in seen:
            raise ScenarioFileError(f"observable {i!r} repeated in one context", f"{where}[{j}]")
        seen.add(i)
    return Context(tuple(ids), name)


def _parse_contexts(data, key: str, known: set[str]) -> tuple[Context, ...]:
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise ScenarioFileError("must be a list", key)
    return tuple(_parse_context(c, f"{key}[{k}]", known) for k, c in enumerate(raw))


def parse_scenario_data(data: Any) -> ScenarioFile:
    """Validate decoded JSON and return a :class:`ScenarioFile`."""
    if not isinstance(data, dict):
        raise ScenarioFileError("top level must be a JSON object", "$")
    unknown = sorted(set(data) - _TOP_LEVEL_KEYS)
    if unknown:
        raise ScenarioFileError(f"unknown key {unknown[0]!r}", unknown[0])
    for key in ("qubits", "observables", "contexts"):
        if key not in data:
            raise ScenarioFileError(f"missing required field {key!r}", key)

    name = data.get("name", "scenario")
    if not isinstance(name, str) or not name:
        raise ScenarioFileError("must be a nonempty string", "name")

    qubits = data["qubits"]
    if not _is_int(qubits) or not 1 <= qubits <= MAX_QUBITS:
        raise ScenarioFileError(f"must be an integer between 1 and {MAX_QUBITS}", "qubits")

    raw_obs = data["observables"]
    if not isinstance(raw_obs, list) or not raw_obs:
        raise ScenarioFileError("must be a nonempty list", "observables")
    observables = []
    ids: set[str] = set()
    for k, o in enumerate(raw_obs):
        where = f"observables[{k}]"
        if not isinstance(o, dict):
            raise ScenarioFileError("must be an object with 'id' and 'pauli'", where)
        extra = set(o) - {"id", "pauli"}
        if extra:
            raise ScenarioFileError(f"unknown key {sorted(extra)[0]!r}", where)
        oid = o.get("id")
        if not isinstance(oid, str) or not oid:
            raise ScenarioFileError("must be a nonempty string", f"{where}.id")
        if oid in ids:
            raise ScenarioFileError(f"duplicate observable id {oid!r}", f"{where}.id")
        text = o.get("pauli")
        if not isinstance(text, str):
            raise ScenarioFileError("must be a Pauli string such as '+XZ'", f"{where}.pauli")
        try:
            pauli = PauliString.parse(text)
        except ValueError as exc:
            raise ScenarioFileError(str(exc), f"{where}.pauli") from None
        if pauli.qubits != qubits:
            raise ScenarioFileError(
                f"{text!r} has {pauli.qubits} letters but the scenario has {qubits} qubits",
                f"{where}.pauli",
            )
        ids.add(oid)
        observables.append((oid, pauli))

    contexts = _parse_contexts(data, "contexts", ids)

    state = None
    if "state" in data and data["state"] is not None:
        raw_state = data["state"]
        dim = 2 ** qubits
        if not isinstance(raw_state, list) or len(raw_state) != dim:
            raise ScenarioFileError(f"must be a list of {dim} entries (2^qubits)", "state")
        entries = []
        for k, e in enumerate(raw_state):
            where = f"state[{k}]"
            if not isinstance(e, list) or len(e) != 4 or not all(_is_int(x) for x in e):
                raise ScenarioFileError("each entry must be four integers [re_num, re_den, im_num, im_den]", where)
            if e[1] == 0 or e[3] == 0:
                raise ScenarioFileError("zero denominator", where)
            entries.append(GaussianRational.from_ints(e))
        if all(z.is_zero() for z in entries):
            raise ScenarioFileError("the state must be nonzero", "state")
        state = tuple(entries)

    state_contexts = _parse_contexts(data, "state_contexts", ids)
    if state_contexts and state is None:
        raise ScenarioFileError("state_contexts need a 'state'", "state_contexts")

    square = None
    if data.get("square") is not None:
        raw_sq = data["square"]
        if (
            not isinstance(raw_sq, list)
            or len(raw_sq) != 3
            or not all(isinstance(r, list) and len(r) == 3 for r in raw_sq)
        ):
            raise ScenarioFileError("must be 3 rows of 3 observable ids", "square")
        for r, row in enumerate(raw_sq):
            for c, i in enumerate(row):
                if not isinstance(i, str) or i not in ids:
                    raise ScenarioFileError(f"unknown observable id {i!r}", f"square[{r}][{c}]")
        if len({i for row in raw_sq for i in row}) != 9:
            raise ScenarioFileError("the nine cells must be distinct observables", "square")
        square = tuple(tuple(row) for row in raw_sq)

    return ScenarioFile(qubits, tuple(observables), contexts, name, state, state_contexts, square)


def load_scenario_file(path) -> ScenarioFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioFileError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return parse_scenario_data(data)


@dataclass(frozen=True)
class SkippedContext:
    """A declared context that produced no constraint, and why."""

    kind: str
    index: int
    members: tuple[str, ...]
    reason: str
    spectrum: Optional[tuple[tuple[int, int], ...]] = None


@dataclass(frozen=True)
class BuiltScenario:
    scenario: Scenario
    square: Optional[MagicSquare] = None
    skipped: tuple[SkippedContext, ...] = field(default=())


def build_scenario(sf: ScenarioFile) -> BuiltScenario:
    """Turn a parsed file into projectors and derived constraints.

    Mixed-parity contexts are recorded as skipped.  Non-commuting contexts and
    state contexts the state does not pin down raise :class:`ScenarioFileError`.
    """
    observables = {oid: observable_from_string(oid, p) for oid, p in sf.observables}
    projectors = {oid: to_projector(o, PROJECTOR_PREFIX + oid) for oid, o in observables.items()}
    constraints: list[ParityConstraint] = []
    skipped: list[SkippedContext] = []
    for k, ctx in enumerate(sf.contexts):
        members = [projectors[i] for i in ctx.ids]
        try:
            constraints.append(extract_constraint(members, ctx.name))
        except MixedParityError as exc:
            skipped.append(SkippedContext("context", k, exc.members, "mixed parity", exc.spectrum))
        except NonCommutingError as exc:
            raise ScenarioFileError(str(exc), f"contexts[{k}]") from None
    state = Vec(sf.state) if sf.state is not None else None
    for k, ctx in enumerate(sf.state_contexts):
        members = [projectors[i] for i in ctx.ids]
        try:
            constraints.append(state_constraint(state, members, ctx.name))
        except (NonCommutingError, NotEigenvectorError) as exc:
            raise ScenarioFileError(str(exc), f"state_contexts[{k}]") from None
    square = None
    if sf.square is not None:
        try:
            square = MagicSquare([[observables[i] for i in row] for row in sf.square])
        except MagicSquareError as exc:
            raise ScenarioFileError(str(exc), "square") from None
    scenario = Scenario(sf.name, tuple(projectors.values()), constraints, state)
    return BuiltScenario(scenario, square, tuple(skipped))


def scenario_to_file(scenario: Scenario, square: Optional[MagicSquare] = None) -> ScenarioFile:
    """Serialize a scenario whose projectors come from Pauli observables."""
    observables = []
    label_to_id = {}
    for p in scenario.projectors:
        oid = p.source.label
        if PROJECTOR_PREFIX + oid != p.label:
            raise ValueError(f"projector {p.label!r} is not named after its observable {oid!r}")
        observables.append((oid, p.source.string))
        label_to_id[p.label] = oid
    qubits = {s.qubits for _, s in observables}
    if len(qubits) != 1:
        raise ValueError("observables act on different numbers of qubits")

    def ctx(c: ParityConstraint) -> Context:
        return Context(tuple(label_to_id[m] for m in c.members), c.name)

    contexts = tuple(ctx(c) for c in scenario.constraints if c.origin == SPECTRAL)
    state_contexts = tuple(ctx(c) for c in scenario.constraints if c.origin == STATE_EIGENVECTOR)
    order = [c.origin for c in scenario.constraints]
    if order != sorted(order, key=lambda o: o != SPECTRAL):
        raise ValueError("spectral constraints must precede state constraints to round-trip")
    state = tuple(scenario.state.entries) if scenario.state is not None else None
    sq = None
    if square is not None:
        sq = tuple(tuple(o.label for o in row) for row in square.cells)
    return ScenarioFile(qubits.pop(), tuple(observables), contexts, scenario.name, state, state_contexts, sq)


def _mermin_peres_file() -> ScenarioFile:
    return scenario_to_file(mermin_peres_scenario(), mermin_square())


def _singlet_file() -> ScenarioFile:
    return scenario_to_file(singlet_scenario())


BUILTINS = {
    "mermin-peres": _mermin_peres_file,
    "singlet": _singlet_file,
}


def builtin_file(name: str) -> ScenarioFile:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ScenarioFileError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}") from None
