import itertools

import numpy as np
import pytest
import scipy.linalg

from magique import clifford as cl
from magique import statevec as sv
from magique.pauli import PauliString, enumerate_paulis
from magique.sre import sre_fast

from conftest import PAULI_MATS, site_op

I2, X, Z = PAULI_MATS["I"], PAULI_MATS["X"], PAULI_MATS["Z"]


def test_hadamard_examples():
    plus = cl.apply_gate(cl.Hadamard(1), sv.make_computational_state(1))
    assert np.allclose(plus.amplitudes, sv.KET_PLUS)
    back = cl.apply_gate(cl.Hadamard(1), plus)
    assert np.allclose(back.amplitudes, [1, 0])


def test_parity_layer_flips_plus():
    out = cl.apply_gate(cl.ZParityLayer(), sv.make_product_plus_minus(3, [1, 1, 1]))
    assert np.allclose(out.amplitudes, sv.make_product_plus_minus(3, [-1, -1, -1]).amplitudes)


@pytest.mark.parametrize("j,l", [(1, 2), (2, 1)])
def test_cnot_matches_matrix_exponential(j, l):
    L = 2
    gen = (np.eye(4) - site_op(L, {j: X})) @ (np.eye(4) - site_op(L, {l: Z}))
    expected = scipy.linalg.expm(1j * np.pi / 4 * gen)
    got = cl.gate_matrix(cl.Cnot(j, l), L)
    assert np.allclose(got, expected, atol=1e-12)


def test_cnot_control_on_plus_is_identity():
    # projector (1 - X_1)/2 annihilates |+> on the control
    rng = np.random.default_rng(2)
    target = rng.normal(size=2) + 1j * rng.normal(size=2)
    psi = sv.make_product_state([sv.KET_PLUS, target])
    out = cl.apply_gate(cl.Cnot(1, 2), psi)
    assert abs(sv.overlap(psi, out)) == pytest.approx(1.0)


def test_cnot_control_on_minus_applies_z():
    # with the control in |->, the gate reduces to 1 - 2 P^1 = Z on the target
    psi = sv.make_product_plus_minus(2, [-1, 1])
    out = cl.apply_gate(cl.Cnot(1, 2), psi)
    assert np.allclose(out.amplitudes, sv.make_product_plus_minus(2, [-1, -1]).amplitudes)


def test_gate_errors():
    with pytest.raises(ValueError):
        cl.Cnot(2, 2)
    with pytest.raises(ValueError):
        cl.apply_gate(cl.Hadamard(4), sv.make_ghz(3))
    with pytest.raises(ValueError):
        cl.apply_circuit(cl.CliffordCircuit(2, [cl.Hadamard(1)]), sv.make_ghz(3))


def test_circuit_examples():
    psi = sv.random_state(3, np.random.default_rng(1))
    assert np.allclose(cl.apply_circuit(cl.CliffordCircuit(3), psi).amplitudes, psi.amplitudes)
    hh = cl.CliffordCircuit(3, [cl.Hadamard(1), cl.Hadamard(1)])
    assert np.allclose(cl.apply_circuit(hh, psi).amplitudes, psi.amplitudes)


def test_s_circuit_layout_L3():
    c = cl.build_s_circuit(3).counts()
    assert c == {"Cnot": 4, "ZGate": 2, "Hadamard": 1, "ZParityLayer": 1}
    gates = cl.build_s_circuit(3).gates
    assert [g.site for g in gates if isinstance(g, cl.ZGate)] == [3, 1]


def test_s_circuit_layout_L5():
    circ = cl.build_s_circuit(5)
    gates = circ.gates
    assert circ.counts() == {"Cnot": 8, "ZGate": 3, "Hadamard": 1, "ZParityLayer": 1}
    assert isinstance(gates[0], cl.ZParityLayer)
    assert [g.sites for g in gates[1:5]] == [(1, 2), (2, 3), (3, 4), (4, 5)]
    assert gates[5:7] == (cl.ZGate(5), cl.Hadamard(5))
    assert gates[7:9] == (cl.ZGate(1), cl.ZGate(3))
    assert [g.sites for g in gates[9:]] == [(5, 4), (5, 3), (5, 2), (5, 1)]


def test_s_circuit_rejects_even():
    with pytest.raises(ValueError):
        cl.build_s_circuit(4)


@pytest.mark.parametrize("L", [3, 5, 7, 9])
def test_s_maps_w_to_wk(L):
    out = cl.apply_circuit(cl.build_s_circuit(L), sv.make_w_state(L))
    assert abs(sv.overlap(sv.make_wk_state(L), out)) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_random_circuits_are_unitary(seed):
    rng = np.random.default_rng(seed)
    L = int(rng.integers(1, 7))
    circ = cl.random_clifford_circuit(L, 25, rng)
    psi = sv.random_state(L, rng)
    assert cl.apply_circuit(circ, psi).norm() == pytest.approx(psi.norm(), abs=1e-10)


def _as_pauli(M, L):
    """Return the Pauli string P with M = c P for |c| = 1, else None."""
    for P in enumerate_paulis(L):
        Pm = P.matrix()
        c = np.trace(Pm.conj().T @ M) / 2**L
        if abs(abs(c) - 1) < 1e-10 and np.allclose(M, c * Pm, atol=1e-10):
            return P
    return None


@pytest.mark.parametrize(
    "gate", [cl.Hadamard(1), cl.Hadamard(2), cl.ZGate(1), cl.ZParityLayer(), cl.Cnot(1, 2), cl.Cnot(2, 1)]
)
def test_gates_conjugate_paulis_to_paulis(gate):
    L = 2
    U = cl.gate_matrix(gate, L)
    for site, letter in itertools.product((1, 2), "XYZ"):
        P = PauliString.single(L, site, letter).matrix()
        assert _as_pauli(U @ P @ U.conj().T, L) is not None


def random_stabilizer_state(L, rng):
    circ = cl.random_clifford_circuit(L, 6 * L, rng)
    return cl.apply_circuit(circ, sv.make_computational_state(L))


@pytest.mark.parametrize("L", [3, 5, 7])
def test_s_preserves_sre(L):
    S = cl.build_s_circuit(L)
    w = sv.make_w_state(L)
    assert sre_fast(cl.apply_circuit(S, w)).value == pytest.approx(sre_fast(w).value, abs=1e-9)
    rng = np.random.default_rng(L)
    for _ in range(3):
        stab = random_stabilizer_state(L, rng)
        assert sre_fast(stab).value == pytest.approx(0.0, abs=1e-9)
        assert sre_fast(cl.apply_circuit(S, stab)).value == pytest.approx(0.0, abs=1e-9)
