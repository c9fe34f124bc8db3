"""Shared test utilities.

The matrix oracle here builds each gate's full 2^n x 2^n unitary with
numpy kron and composes circuits by plain matrix multiplication.  It
shares no code with the simulator or the gate IR under test, so agreement
between the two is real evidence.  Dense matrices only; keep n small.
"""

import itertools
import math

import numpy as np

from fockprep import CH, CNOT, Circuit, Configuration, U, X, validate_target

_I = np.eye(2)
_P0 = np.array([[1.0, 0.0], [0.0, 0.0]])
_P1 = np.array([[0.0, 0.0], [0.0, 1.0]])
_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def kron_all(factors):
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def gate_matrix(n, g):
    """Full-space matrix of one gate.  Qubit 0 is the leftmost kron factor,
    matching the packed-integer convention (qubit 0 = most significant bit)."""
    if g.kind == "U":
        block = np.array([[g.u, -g.v], [g.v, g.u]])
    elif g.kind == "CH":
        p = 2.0 * g.u * g.v
        q = g.u * g.u - g.v * g.v
        block = np.array([[p, q], [q, -p]])
    else:
        block = _X
    if g.kind in ("X", "U"):
        t = g.qubits[0]
        return kron_all([block if w == t else _I for w in range(n)])
    c, t = g.qubits
    idle = kron_all([_P0 if w == c else _I for w in range(n)])
    fire = kron_all([_P1 if w == c else (block if w == t else _I) for w in range(n)])
    return idle + fire


def circuit_matrix(circ):
    """Product of gate matrices, first gate applied first."""
    out = np.eye(1 << circ.n)
    for g in circ.gates:
        out = gate_matrix(circ.n, g) @ out
    return out


def random_circuit(rng, n, length):
    """Random circuit from the four gate kinds; U/CH parameters are drawn
    as (cos t, sin t), which sits on the unit circle to rounding."""
    gates = []
    for _ in range(length):
        kinds = ("X", "U") if n == 1 else ("X", "CNOT", "U", "CH")
        kind = rng.choice(kinds)
        if kind in ("CNOT", "CH"):
            c, t = rng.sample(range(n), 2)
        else:
            t = rng.randrange(n)
        if kind == "X":
            gates.append(X(t))
        elif kind == "CNOT":
            gates.append(CNOT(c, t))
        else:
            th = rng.uniform(0.0, 2.0 * math.pi)
            u, v = math.cos(th), math.sin(th)
            gates.append(U(t, u, v) if kind == "U" else CH(c, t, u, v))
    return Circuit(n=n, gates=tuple(gates))


def random_target(rng, n, m, support=None):
    """Random weight-m state driven by a random.Random instance.

    Distinct from the package's own SplitMix64 generator on purpose: tests
    that exercise the generator should not also depend on it for inputs.
    Amplitudes are gaussians redrawn away from zero, then normalized.
    """
    combos = list(itertools.combinations(range(n), m))
    if support is None:
        support = rng.randint(1, len(combos))
    picks = rng.sample(combos, support)
    terms = []
    for positions in picks:
        occ = 0
        for p in positions:
            occ |= 1 << (n - 1 - p)
        amp = 0.0
        while abs(amp) < 1e-3:
            amp = rng.gauss(0.0, 1.0)
        terms.append((Configuration(n, occ), amp))
    return validate_target(terms, n, m, auto_normalize=True)
