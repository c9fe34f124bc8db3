"""Reference statevector simulation.

Two engines with one gate semantics: DenseState holds all 2^n complex
amplitudes in a numpy array (capped at n = 24, i.e. 256 MB), SparseState
holds a packed-occupation -> amplitude dict and drops entries below a
small threshold.  Both apply CH natively as a conditioned 2x2 block, so
verifying a circuit never depends on the lowering pass under test.

Basis-state index convention: qubit 0 is the most significant bit, which
makes a Configuration's packed value the dense index directly.
"""

from __future__ import annotations

from typing import Dict, Union

import numpy as np

from .circuit import Circuit
from .errors import DimensionMismatch, InvalidArgs, TooManyQubitsDense
from .fock import TargetState

DENSE_QUBIT_CAP = 24

# Sparse entries with |amplitude| below this are discarded after each gate.
SPARSE_DROP = 1e-12


class DenseState:
    """Full 2^n complex statevector."""

    __slots__ = ("n", "vec")

    def __init__(self, n: int, vec: np.ndarray):
        if n > DENSE_QUBIT_CAP:
            raise TooManyQubitsDense(f"dense simulation capped at {DENSE_QUBIT_CAP} qubits, got {n}")
        if vec.shape != (1 << n,):
            raise DimensionMismatch(f"vector length {vec.shape} does not match n={n}")
        self.n = n
        self.vec = np.asarray(vec, dtype=np.complex128)

    @classmethod
    def zero(cls, n: int) -> "DenseState":
        if n < 1:
            raise InvalidArgs(f"n must be >= 1, got {n}")
        if n > DENSE_QUBIT_CAP:
            raise TooManyQubitsDense(f"dense simulation capped at {DENSE_QUBIT_CAP} qubits, got {n}")
        vec = np.zeros(1 << n, dtype=np.complex128)
        vec[0] = 1.0
        return cls(n, vec)

    @classmethod
    def from_target(cls, state: TargetState) -> "DenseState":
        out = cls.zero(state.n)
        out.vec[0] = 0.0
        for cfg, amp in state.terms:
            out.vec[cfg.occ] = amp
        return out

    def copy(self) -> "DenseState":
        return DenseState(self.n, self.vec.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.vec, self.vec).real))

    def amplitude(self, occ: int) -> complex:
        return complex(self.vec[occ])


class SparseState:
    """Dict-backed statevector; keys are packed occupation integers."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: Dict[int, complex]):
        if n < 1:
            raise InvalidArgs(f"n must be >= 1, got {n}")
        self.n = n
        self.amps = {k: complex(a) for k, a in amps.items() if abs(a) > 0.0}

    @classmethod
    def zero(cls, n: int) -> "SparseState":
        return cls(n, {0: 1.0})

    @classmethod
    def from_target(cls, state: TargetState) -> "SparseState":
        return cls(state.n, {cfg.occ: amp for cfg, amp in state.terms})

    def copy(self) -> "SparseState":
        return SparseState(self.n, dict(self.amps))

    def norm(self) -> float:
        return float(np.sqrt(sum((a * a.conjugate()).real for a in self.amps.values())))

    def amplitude(self, occ: int) -> complex:
        return self.amps.get(occ, 0.0 + 0.0j)


State = Union[DenseState, SparseState]


def _target_slices(n: int, t: int, control: "int | None"):
    """Index tuples selecting the target=0 and target=1 halves.

    With a control given, both tuples restrict to the control=1 slice
    (the target axis index shifts down when it follows the control axis).
    """
    if control is None:
        lo = [slice(None)] * n
        hi = [slice(None)] * n
        lo[t], hi[t] = 0, 1
        return tuple(lo), tuple(hi), None
    sel = [slice(None)] * n
    sel[control] = 1
    ta = t - 1 if t > control else t
    lo = [slice(None)] * (n - 1)
    hi = [slice(None)] * (n - 1)
    lo[ta], hi[ta] = 0, 1
    return tuple(lo), tuple(hi), tuple(sel)


def _dense_apply(state: DenseState, gate) -> None:
    psi = state.vec.reshape((2,) * state.n)
    lo, hi, ctl = _target_slices(state.n, gate.target, gate.control)
    sub = psi if ctl is None else psi[ctl]
    kind = gate.kind
    if kind in ("X", "CNOT"):
        tmp = sub[lo].copy()
        sub[lo] = sub[hi]
        sub[hi] = tmp
        return
    if kind == "U":
        m00, m01, m10, m11 = gate.u, -gate.v, gate.v, gate.u
    else:  # CH: reflection [[p, q], [q, -p]] inside the control=1 slice
        p = 2.0 * gate.u * gate.v
        q = gate.u * gate.u - gate.v * gate.v
        m00, m01, m10, m11 = p, q, q, -p
    a0 = sub[lo].copy()
    a1 = sub[hi]
    sub[lo] = m00 * a0 + m01 * a1
    sub[hi] = m10 * a0 + m11 * a1


def _sparse_flip(state: SparseState, cmask: int, tmask: int) -> None:
    # XOR on the firing subset is a bijection and cannot collide with the
    # non-firing subset (their control bits differ), so a rebuild is safe.
    out: Dict[int, complex] = {}
    for k, a in state.amps.items():
        out[k ^ tmask if k & cmask == cmask else k] = a
    state.amps = out


def _sparse_mix(state: SparseState, cmask: int, tmask: int, m00, m01, m10, m11) -> None:
    amps = state.amps
    done = set()
    for k in list(amps.keys()):
        base = k & ~tmask
        if base in done:
            continue
        done.add(base)
        if base & cmask != cmask:
            continue
        a0 = amps.get(base, 0.0 + 0.0j)
        a1 = amps.get(base | tmask, 0.0 + 0.0j)
        n0 = m00 * a0 + m01 * a1
        n1 = m10 * a0 + m11 * a1
        for key, val in ((base, n0), (base | tmask, n1)):
            if abs(val) <= SPARSE_DROP:
                amps.pop(key, None)
            else:
                amps[key] = val


def _sparse_apply(state: SparseState, gate) -> None:
    n = state.n
    tmask = 1 << (n - 1 - gate.target)
    cmask = 0 if gate.control is None else 1 << (n - 1 - gate.control)
    kind = gate.kind
    if kind in ("X", "CNOT"):
        _sparse_flip(state, cmask, tmask)
        return
    if kind == "U":
        _sparse_mix(state, 0, tmask, gate.u, -gate.v, gate.v, gate.u)
        return
    p = 2.0 * gate.u * gate.v
    q = gate.u * gate.u - gate.v * gate.v
    _sparse_mix(state, cmask, tmask, p, q, q, -p)


def run(circuit: Circuit, initial: State) -> State:
    """Apply a circuit to a state, returning a new state of the same kind."""
    if circuit.n != initial.n:
        raise DimensionMismatch(f"circuit has n={circuit.n}, state has n={initial.n}")
    state = initial.copy()
    if isinstance(state, DenseState):
        for gate in circuit.gates:
            _dense_apply(state, gate)
    else:
        for gate in circuit.gates:
            _sparse_apply(state, gate)
    return state


def _inner(s1: State, s2: State) -> complex:
    if isinstance(s1, DenseState) and isinstance(s2, DenseState):
        return complex(np.vdot(s1.vec, s2.vec))
    if isinstance(s1, SparseState) and isinstance(s2, SparseState):
        small, big, conj_small = (
            (s1, s2, True) if len(s1.amps) <= len(s2.amps) else (s2, s1, False)
        )
        total = 0.0 + 0.0j
        for k, a in small.amps.items():
            b = big.amps.get(k)
            if b is None:
                continue
            total += a.conjugate() * b if conj_small else b.conjugate() * a
        return total
    if isinstance(s1, DenseState):
        return sum(s1.vec[k].conjugate() * a for k, a in s2.amps.items())
    return sum(a.conjugate() * s2.vec[k] for k, a in s1.amps.items())


def fidelity(s1: State, s2: State) -> float:
    """|<s1|s2>|^2; accepts any mix of dense and sparse states."""
    if s1.n != s2.n:
        raise DimensionMismatch(f"states have n={s1.n} and n={s2.n}")
    return float(abs(_inner(s1, s2)) ** 2)
