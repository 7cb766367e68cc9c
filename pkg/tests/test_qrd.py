"""Tests for the Givens/Gray-code QR-style compiler."""

import numpy as np
import pytest

from atomqc import circuit as cir
from atomqc.exceptions import NotPowerOfTwo, NotUnitary, SizeTooLarge
from atomqc.linalg import phase_distance, random_unitary
from atomqc.options import CompileOptions
from atomqc.qrd import gcb_code, gcb_permutation, qrd_compile, qrd_eliminate
from atomqc.simulate import circuit_unitary

RNG = np.random.default_rng(55)


def test_gcb_code_values():
    assert [gcb_code(i) for i in range(8)] == [0, 1, 3, 2, 6, 7, 5, 4]


def test_gcb_permutation_properties():
    for n in range(1, 9):
        codes = gcb_permutation(n).codes
        assert sorted(codes) == list(range(2**n))
        for a, b in zip(codes, codes[1:]):
            assert bin(a ^ b).count("1") == 1


def test_eliminate_diagonalizes():
    u = random_unitary(2, seed=0)
    ops, phases = qrd_eliminate(u)
    m = u.copy()
    for op in ops:
        rows = [op.basis_a, op.basis_b]
        m[rows, :] = op.block @ m[rows, :]
    off = m - np.diag(np.diag(m))
    assert np.max(np.abs(off)) < 1e-12
    assert np.allclose(np.abs(np.diag(m)), 1.0)
    assert np.allclose(np.angle(np.diag(m))[[gcb_code(i) for i in range(4)]], phases)


def test_eliminate_ops_are_gray_adjacent():
    u = random_unitary(3, seed=1)
    ops, _ = qrd_eliminate(u)
    for op in ops:
        assert bin(op.basis_a ^ op.basis_b).count("1") == 1
    dim = 8
    assert len(ops) <= dim * (dim - 1) // 2


def test_compile_identity_is_empty():
    c = qrd_compile(np.eye(8))
    assert len(c.gates) == 0


def test_compile_diagonal_phase_only():
    u = np.diag([1.0, np.exp(1j * np.pi / 3)])
    c = qrd_compile(u, lower=False)
    assert [g.kind for g in c.gates] == ["DIAG_PHASE"]
    assert phase_distance(circuit_unitary(c), u) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lower", [False, True])
@pytest.mark.parametrize("drop", [False, True])
def test_round_trip_all_modes(n, lower, drop):
    u = random_unitary(n, seed=17 + n)
    c = qrd_compile(u, lower=lower, drop_controls=drop)
    assert phase_distance(circuit_unitary(c), u) < 1e-8


def test_control_elimination_reduces_count():
    u = random_unitary(3, seed=4)
    full = cir.gate_counts(qrd_compile(u, drop_controls=False)).entangling_total
    reduced = cir.gate_counts(qrd_compile(u, drop_controls=True)).entangling_total
    assert reduced < full


def test_lowered_gate_kinds():
    u = random_unitary(3, seed=9)
    c = qrd_compile(u)
    allowed = {"RX", "RY", "RZ", "H", "X", "PHASE", "U1", "CNOT", "CZ", "CCZ", "MCX"}
    assert all(g.kind in allowed for g in c.gates)


def test_compile_respects_options_object():
    u = random_unitary(2, seed=2)
    opts = CompileOptions(method="qrd", lower=False, eliminate_controls=False)
    c = qrd_compile(u, opts)
    assert all(g.kind in ("MCU", "U1", "DIAG_PHASE", "CU") for g in c.gates)
    assert phase_distance(circuit_unitary(c), u) < 1e-10


def test_input_validation():
    with pytest.raises(NotUnitary):
        qrd_compile(np.eye(4) * 1.01)
    with pytest.raises(NotPowerOfTwo):
        qrd_compile(np.eye(6))
    with pytest.raises(SizeTooLarge):
        qrd_compile(np.eye(16), max_qubits=3)


def test_cnot_gate_compiles_to_few_gates():
    cnot = np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )
    c = qrd_compile(cnot)
    assert phase_distance(circuit_unitary(c), cnot) < 1e-12
    # QRD is exact but not count-optimal: a CNOT matrix comes back as 4 CNOTs.
    assert cir.gate_counts(c).entangling_total <= 4
