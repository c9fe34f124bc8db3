"""Gate-level intermediate representation.

Four gate kinds cover everything the synthesizer emits:

    X t         bit flip
    CNOT c t    controlled bit flip
    U t u v     the real rotation [[u, -v], [v, u]] with u^2 + v^2 = 1
    CH c t u v  controlled reflection [[2uv, u^2-v^2], [u^2-v^2, -2uv]],
                active when the control is |1>; equal to U(u,v) then
                CNOT then U(u,-v), hence worth exactly one CNOT.

Gates apply first-to-last.  Circuits are immutable; invert, decompose_ch
and count are pure transformations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .errors import InvalidArgs

# u^2 + v^2 must be within this of 1 for U and CH gates.
UNIT_TOL = 1e-12

KINDS = ("X", "CNOT", "U", "CH")
_ARITY = {"X": 1, "CNOT": 2, "U": 1, "CH": 2}
_HAS_PARAMS = {"X": False, "CNOT": False, "U": True, "CH": True}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: Tuple[int, ...]
    u: Optional[float] = None
    v: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidArgs(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != _ARITY[self.kind]:
            raise InvalidArgs(f"{self.kind} takes {_ARITY[self.kind]} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise InvalidArgs(f"negative qubit index in {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidArgs(f"control equals target in {self.kind} {self.qubits}")
        if _HAS_PARAMS[self.kind]:
            if self.u is None or self.v is None:
                raise InvalidArgs(f"{self.kind} requires u and v")
            r2 = self.u * self.u + self.v * self.v
            if abs(r2 - 1.0) > UNIT_TOL:
                raise InvalidArgs(f"{self.kind} parameters not on the unit circle: u={self.u!r} v={self.v!r}")
        elif self.u is not None or self.v is not None:
            raise InvalidArgs(f"{self.kind} takes no parameters")

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def control(self) -> Optional[int]:
        return self.qubits[0] if len(self.qubits) == 2 else None


def X(t: int) -> Gate:
    return Gate("X", (t,))


def CNOT(c: int, t: int) -> Gate:
    return Gate("CNOT", (c, t))


def U(t: int, u: float, v: float) -> Gate:
    return Gate("U", (t,), float(u), float(v))


def CH(c: int, t: int, u: float, v: float) -> Gate:
    return Gate("CH", (c, t), float(u), float(v))


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: Tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidArgs(f"circuit needs n >= 1, got {self.n}")
        for g in self.gates:
            if any(q >= self.n for q in g.qubits):
                raise InvalidArgs(f"gate {g.kind} {g.qubits} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def circuit(n: int, gates: Iterable[Gate]) -> Circuit:
    return Circuit(n=n, gates=tuple(gates))


def invert(c: Circuit) -> Circuit:
    """Inverse circuit: reversed order, each gate inverted.

    X, CNOT and CH are self-inverse (the reflection squares to identity);
    U(u, v) inverts to its transpose U(u, -v).  invert(invert(c)) == c.
    """
    inv = []
    for g in reversed(c.gates):
        if g.kind == "U":
            inv.append(U(g.qubits[0], g.u, -g.v))
        else:
            inv.append(g)
    return Circuit(n=c.n, gates=tuple(inv))


def decompose_ch(c: Circuit) -> Circuit:
    """Lower every CH to [U(t,u,v), CNOT(c,t), U(t,u,-v)]; other gates pass through."""
    out = []
    for g in c.gates:
        if g.kind == "CH":
            ctl, tgt = g.qubits
            out.append(U(tgt, g.u, g.v))
            out.append(CNOT(ctl, tgt))
            out.append(U(tgt, g.u, -g.v))
        else:
            out.append(g)
    return Circuit(n=c.n, gates=tuple(out))


@dataclass(frozen=True)
class GateCounts:
    """Histogram plus the derived totals used for cost accounting.

    cnot_total charges one CNOT per CH; single_qubit_total charges the two
    U gates hiding in each CH; grand_total is the sum of both.
    """

    x_count: int
    cnot_count: int
    one_qubit_count: int
    ch_count: int
    cnot_total: int
    single_qubit_total: int
    grand_total: int


def count(c: Circuit) -> GateCounts:
    x = sum(1 for g in c.gates if g.kind == "X")
    cx = sum(1 for g in c.gates if g.kind == "CNOT")
    u1 = sum(1 for g in c.gates if g.kind == "U")
    ch = sum(1 for g in c.gates if g.kind == "CH")
    return GateCounts(
        x_count=x,
        cnot_count=cx,
        one_qubit_count=u1,
        ch_count=ch,
        cnot_total=cx + ch,
        single_qubit_total=x + u1 + 2 * ch,
        grand_total=x + cx + u1 + 3 * ch,
    )
