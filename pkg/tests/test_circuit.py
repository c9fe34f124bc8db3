"""Gate IR: validation, inversion, CH lowering, counting."""

import math
import random

import numpy as np
import pytest

from fockprep import CH, CNOT, Circuit, Gate, InvalidArgs, U, X, count, decompose_ch, invert
from helpers import circuit_matrix, random_circuit


class TestGateValidation:
    def test_constructors_and_accessors(self):
        g = CH(0, 2, 0.6, 0.8)
        assert g.kind == "CH" and g.qubits == (0, 2)
        assert g.control == 0 and g.target == 2
        assert X(1).qubits == (1,) and X(1).control is None
        assert CNOT(2, 0).target == 0
        assert U(3, 1.0, 0.0).control is None

    def test_unknown_kind(self):
        with pytest.raises(InvalidArgs):
            Gate("H", (0,))

    def test_arity(self):
        with pytest.raises(InvalidArgs):
            Gate("X", (0, 1))
        with pytest.raises(InvalidArgs):
            Gate("CNOT", (0,))

    def test_negative_index(self):
        with pytest.raises(InvalidArgs):
            X(-1)

    def test_control_equals_target(self):
        with pytest.raises(InvalidArgs):
            CNOT(1, 1)
        with pytest.raises(InvalidArgs):
            CH(2, 2, 0.6, 0.8)

    def test_parameters_required(self):
        with pytest.raises(InvalidArgs):
            Gate("U", (0,))
        with pytest.raises(InvalidArgs):
            Gate("U", (0,), u=1.0)

    def test_parameters_forbidden(self):
        with pytest.raises(InvalidArgs):
            Gate("X", (0,), u=1.0, v=0.0)

    def test_unit_circle_enforced(self):
        U(0, math.cos(0.3), math.sin(0.3))
        U(0, 1.0, 0.0)
        with pytest.raises(InvalidArgs):
            U(0, 0.6, 0.81)
        with pytest.raises(InvalidArgs):
            CH(0, 1, 1.0, 1e-5)


class TestCircuit:
    def test_len_and_iter(self):
        c = Circuit(n=2, gates=(X(0), CNOT(0, 1)))
        assert len(c) == 2
        assert [g.kind for g in c] == ["X", "CNOT"]

    def test_qubit_range_checked(self):
        with pytest.raises(InvalidArgs):
            Circuit(n=1, gates=(X(1),))
        with pytest.raises(InvalidArgs):
            Circuit(n=2, gates=(CNOT(0, 2),))

    def test_needs_a_qubit(self):
        with pytest.raises(InvalidArgs):
            Circuit(n=0, gates=())


class TestInvert:
    def test_reverses_and_transposes(self):
        c = Circuit(n=2, gates=(X(0), U(1, 0.6, 0.8), CNOT(0, 1)))
        inv = invert(c)
        assert [g.kind for g in inv.gates] == ["CNOT", "U", "X"]
        assert inv.gates[1].u == 0.6 and inv.gates[1].v == -0.8

    def test_ch_is_self_inverse(self):
        c = Circuit(n=2, gates=(CH(0, 1, 0.6, 0.8),))
        assert invert(c) == c

    def test_involution(self):
        rng = random.Random(41)
        for _ in range(50):
            c = random_circuit(rng, rng.randint(1, 6), rng.randint(0, 20))
            assert invert(invert(c)) == c

    def test_composes_to_identity(self):
        rng = random.Random(43)
        for _ in range(100):
            n = rng.randint(1, 6)
            c = random_circuit(rng, n, rng.randint(1, 25))
            prod = circuit_matrix(invert(c)) @ circuit_matrix(c)
            assert np.max(np.abs(prod - np.eye(1 << n))) < 1e-10


class TestDecomposeCH:
    def test_lowering_shape(self):
        c = Circuit(n=2, gates=(X(0), CH(0, 1, 0.6, 0.8)))
        low = decompose_ch(c)
        assert [g.kind for g in low.gates] == ["X", "U", "CNOT", "U"]
        assert low.gates[1].qubits == (1,) and low.gates[2].qubits == (0, 1)
        assert low.gates[1].v == 0.8 and low.gates[3].v == -0.8

    def test_preserves_action(self):
        rng = random.Random(47)
        for _ in range(100):
            n = rng.randint(2, 6)
            c = random_circuit(rng, n, rng.randint(1, 25))
            diff = circuit_matrix(decompose_ch(c)) - circuit_matrix(c)
            assert np.max(np.abs(diff)) < 1e-12

    def test_count_invariants(self):
        # lowering trades each CH for 2 U + 1 CNOT, so every derived
        # total is unchanged while ch_count goes to zero
        rng = random.Random(53)
        for _ in range(100):
            c = random_circuit(rng, rng.randint(2, 6), rng.randint(0, 30))
            a, b = count(c), count(decompose_ch(c))
            assert b.ch_count == 0
            assert b.cnot_total == a.cnot_total
            assert b.single_qubit_total == a.single_qubit_total
            assert b.grand_total == a.grand_total


class TestCount:
    def test_pinned_histogram(self):
        c = Circuit(
            n=3,
            gates=(X(0), X(1), CNOT(0, 1), U(2, 1.0, 0.0), CH(0, 2, 0.6, 0.8)),
        )
        k = count(c)
        assert (k.x_count, k.cnot_count, k.one_qubit_count, k.ch_count) == (2, 1, 1, 1)
        assert k.cnot_total == 2
        assert k.single_qubit_total == 5
        assert k.grand_total == 7

    def test_totals_consistent(self):
        rng = random.Random(59)
        for _ in range(200):
            c = random_circuit(rng, rng.randint(1, 8), rng.randint(0, 40))
            k = count(c)
            assert k.cnot_total == k.cnot_count + k.ch_count
            assert k.single_qubit_total == k.x_count + k.one_qubit_count + 2 * k.ch_count
            assert k.grand_total == k.cnot_total + k.single_qubit_total
