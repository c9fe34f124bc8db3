"""State and circuit files.

States are JSON: {"schema_version": 1, "n": ..., "m": ..., "terms":
[{"bits": "0110", "amp": ...}, ...]}.  Circuits come in two forms, JSON
({"schema_version": 1, "n": ..., "gates": [{"kind": "CH", "q": [0, 1],
"u": ..., "v": ...}, ...]}) and a line-oriented text format:

    # n=3
    X 0
    CNOT 0 1
    U 0 <u> <v>
    CH 0 1 <u> <v>

Indices are 0-based and gates are listed in application order.  All
decimals carry 17 significant digits, which round-trips IEEE doubles
bit-exactly; writers are hand-rolled so the digit count is guaranteed.
Loaders name the offending line or field when they reject a file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .circuit import CH, CNOT, Circuit, Gate, U, X
from .errors import FormatError, ValidationError
from .fock import TargetState, validate_target

SCHEMA_VERSION = 1

PathLike = Union[str, Path]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# -- states ---------------------------------------------------------------


def state_dumps(state: TargetState) -> str:
    lines = [
        "{",
        f'  "schema_version": {SCHEMA_VERSION},',
        f'  "n": {state.n},',
        f'  "m": {state.m},',
        '  "terms": [',
    ]
    body = [f'    {{"bits": "{cfg.bits}", "amp": {_fmt(amp)}}}' for cfg, amp in state.terms]
    lines.append(",\n".join(body))
    lines += ["  ]", "}", ""]
    return "\n".join(lines)


def _require(doc: dict, field: str, kinds, where: str):
    if field not in doc:
        raise FormatError(f"{where}: missing field {field!r}")
    val = doc[field]
    if not isinstance(val, kinds) or isinstance(val, bool):
        raise FormatError(f"{where}: field {field!r} has the wrong type")
    return val


def state_loads(text: str) -> TargetState:
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise FormatError(f"state file is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise FormatError("state file: top level must be an object")
    version = _require(doc, "schema_version", int, "state file")
    if version != SCHEMA_VERSION:
        raise FormatError(f"state file: unsupported schema_version {version}")
    n = _require(doc, "n", int, "state file")
    m = _require(doc, "m", int, "state file")
    terms = _require(doc, "terms", list, "state file")
    raw = []
    for i, term in enumerate(terms):
        where = f"terms[{i}]"
        if not isinstance(term, dict):
            raise FormatError(f"{where}: must be an object")
        bits = _require(term, "bits", str, where)
        if len(bits) != n or any(c not in "01" for c in bits):
            raise FormatError(f"{where}.bits: need {n} characters of 0/1, got {bits!r}")
        amp = _require(term, "amp", (int, float), where)
        raw.append((bits, float(amp)))
    return validate_target(raw, n, m)


def save_state(state: TargetState, path: PathLike) -> None:
    Path(path).write_text(state_dumps(state))


def load_state(path: PathLike) -> TargetState:
    return state_loads(Path(path).read_text())


# -- circuits -------------------------------------------------------------


def _gate_json(g: Gate) -> str:
    q = ", ".join(str(i) for i in g.qubits)
    if g.kind in ("X", "CNOT"):
        return f'    {{"kind": "{g.kind}", "q": [{q}]}}'
    return f'    {{"kind": "{g.kind}", "q": [{q}], "u": {_fmt(g.u)}, "v": {_fmt(g.v)}}}'


def circuit_dumps(circuit: Circuit, fmt: str = "json") -> str:
    if fmt == "json":
        lines = [
            "{",
            f'  "schema_version": {SCHEMA_VERSION},',
            f'  "n": {circuit.n},',
            '  "gates": [',
            ",\n".join(_gate_json(g) for g in circuit.gates),
            "  ]",
            "}",
            "",
        ]
        return "\n".join(lines)
    if fmt == "text":
        lines = [f"# n={circuit.n}"]
        for g in circuit.gates:
            parts = [g.kind] + [str(i) for i in g.qubits]
            if g.kind in ("U", "CH"):
                parts += [_fmt(g.u), _fmt(g.v)]
            lines.append(" ".join(parts))
        lines.append("")
        return "\n".join(lines)
    raise ValidationError(f"unknown circuit format {fmt!r}")


def _build_gate(kind: str, qubits, u, v, where: str) -> Gate:
    try:
        if kind == "X":
            return X(*qubits)
        if kind == "CNOT":
            return CNOT(*qubits)
        if kind == "U":
            return U(qubits[0], u, v)
        if kind == "CH":
            return CH(qubits[0], qubits[1], u, v)
    except (ValidationError, TypeError, IndexError) as e:
        raise FormatError(f"{where}: {e}") from None
    raise FormatError(f"{where}: unknown gate kind {kind!r}")


def _circuit_from_json(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise FormatError(f"circuit file is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise FormatError("circuit file: top level must be an object")
    version = _require(doc, "schema_version", int, "circuit file")
    if version != SCHEMA_VERSION:
        raise FormatError(f"circuit file: unsupported schema_version {version}")
    n = _require(doc, "n", int, "circuit file")
    entries = _require(doc, "gates", list, "circuit file")
    gates = []
    for i, entry in enumerate(entries):
        where = f"gates[{i}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{where}: must be an object")
        kind = _require(entry, "kind", str, where)
        q = _require(entry, "q", list, where)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in q):
            raise FormatError(f"{where}.q: indices must be integers")
        u = v = None
        if kind in ("U", "CH"):
            u = float(_require(entry, "u", (int, float), where))
            v = float(_require(entry, "v", (int, float), where))
        gates.append(_build_gate(kind, q, u, v, where))
    try:
        return Circuit(n=n, gates=tuple(gates))
    except ValidationError as e:
        raise FormatError(f"circuit file: {e}") from None


def _circuit_from_text(text: str) -> Circuit:
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("#"):
        raise FormatError("line 1: expected header '# n=<qubits>'")
    header = lines[0].strip().lstrip("#").strip()
    if not header.startswith("n="):
        raise FormatError(f"line 1: expected header '# n=<qubits>', got {lines[0]!r}")
    try:
        n = int(header[2:])
    except ValueError:
        raise FormatError(f"line 1: bad qubit count in {lines[0]!r}") from None
    gates = []
    arity = {"X": 1, "CNOT": 2, "U": 1, "CH": 2}
    params = {"X": 0, "CNOT": 0, "U": 2, "CH": 2}
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped:
            continue
        where = f"line {lineno}"
        tokens = stripped.split()
        kind = tokens[0]
        if kind not in arity:
            raise FormatError(f"{where}: unknown gate kind {kind!r}")
        want = 1 + arity[kind] + params[kind]
        if len(tokens) != want:
            raise FormatError(f"{where}: {kind} takes {want - 1} fields, got {len(tokens) - 1}")
        try:
            qubits = [int(t) for t in tokens[1 : 1 + arity[kind]]]
        except ValueError:
            raise FormatError(f"{where}: bad qubit index") from None
        u = v = None
        if params[kind]:
            try:
                u = float(tokens[-2])
                v = float(tokens[-1])
            except ValueError:
                raise FormatError(f"{where}: bad gate parameter") from None
        gates.append(_build_gate(kind, qubits, u, v, where))
    try:
        return Circuit(n=n, gates=tuple(gates))
    except ValidationError as e:
        raise FormatError(f"circuit file: {e}") from None


def circuit_loads(text: str) -> Circuit:
    """Parse a circuit in either format (text starts with '#', JSON with '{')."""
    head = text.lstrip()[:1]
    if head == "#":
        return _circuit_from_text(text)
    if head == "{":
        return _circuit_from_json(text)
    raise FormatError("circuit file: expected '#' (text form) or '{' (JSON form) first")


def save_circuit(circuit: Circuit, path: PathLike, fmt: str = "json") -> None:
    Path(path).write_text(circuit_dumps(circuit, fmt))


def load_circuit(path: PathLike) -> Circuit:
    return circuit_loads(Path(path).read_text())
