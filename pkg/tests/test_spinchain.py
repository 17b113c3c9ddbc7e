import numpy as np
import pytest

from magique import spinchain as sc
from magique import statevec as sv
from magique.spinchain import SpinChainModel, build_hamiltonian, ground_state, lowest_eigenpairs

from conftest import PAULI_MATS, site_op

X, Y, Z = PAULI_MATS["X"], PAULI_MATS["Y"], PAULI_MATS["Z"]


def kron_hamiltonian(kind, J, lam, L, axis="y"):
    """Dense reference assembled from Kronecker products of 2x2 matrices."""
    wrap = lambda j: (j - 1) % L + 1
    H = np.zeros((2**L, 2**L), dtype=complex)
    side = Y if axis == "y" else X
    for j in range(1, L + 1):
        H += J * site_op(L, {j: X, wrap(j + 1): X})
        if kind == "tfim":
            H -= lam * site_op(L, {j: Z})
        else:
            H -= lam * site_op(L, {wrap(j - 1): side, j: Z, wrap(j + 1): side})
    return H


CASES = [
    (kind, J, lam, L, axis)
    for kind, axes in (("tfim", ("y",)), ("cim", ("x", "y")))
    for axis in axes
    for J in (1, -1)
    for lam in (0.0, 0.7)
    for L in (3, 4, 5, 6)
    if not (J == 1 and L % 2 == 0)
]


@pytest.mark.parametrize("kind,J,lam,L,axis", CASES)
def test_hamiltonian_matches_kron_oracle(kind, J, lam, L, axis):
    H = build_hamiltonian(SpinChainModel(kind, J, lam, L, cluster_axis=axis)).toarray()
    assert np.array_equal(H, H.T)
    assert np.allclose(H, kron_hamiltonian(kind, J, lam, L, axis), atol=1e-14)


@pytest.mark.parametrize("kind", ["tfim", "cim"])
@pytest.mark.parametrize("L", [3, 5, 7, 8])
def test_hamiltonian_commutes_with_translation(kind, L):
    J = -1 if L % 2 == 0 else 1
    H = build_hamiltonian(SpinChainModel(kind, J, 0.6, L))
    psi = sv.random_state(L, np.random.default_rng(L))
    lhs = H @ sv.translate(psi).amplitudes
    rhs = sv.translate(sv.StateVector(H @ psi.amplitudes, check_norm=False)).amplitudes
    assert np.linalg.norm(lhs - rhs) < 1e-10


def test_model_validation():
    with pytest.raises(ValueError):
        SpinChainModel("xxz", 1, 0.5, 5)
    with pytest.raises(ValueError):
        SpinChainModel("tfim", 2, 0.5, 5)
    with pytest.raises(ValueError):
        SpinChainModel("tfim", 1, -0.1, 5)
    with pytest.raises(ValueError):
        SpinChainModel("tfim", 1, 0.5, 6)
    with pytest.raises(ValueError):
        SpinChainModel("tfim", -1, 0.5, 17)
    assert SpinChainModel("TFIM", 1, 0.5, 5).frustrated
    assert not SpinChainModel("tfim", -1, 0.5, 5).frustrated


def test_classical_energies():
    w, _, d = lowest_eigenpairs(SpinChainModel("tfim", 1, 0.0, 5))
    assert w[0] == pytest.approx(-3.0)
    assert d == 10
    w, _, d = lowest_eigenpairs(SpinChainModel("tfim", -1, 0.0, 5))
    assert w[0] == pytest.approx(-5.0)
    assert d == 2


@pytest.mark.parametrize("kind", ["tfim", "cim"])
@pytest.mark.parametrize("L", [3, 5, 7])
def test_classical_point_degeneracy(kind, L):
    assert sc.ground_degeneracy(SpinChainModel(kind, 1, 0.0, L)) == 2 * L


@pytest.mark.parametrize("lam", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("L", [5, 7, 9, 11])
def test_frustrated_tfim_unique(lam, L):
    assert sc.ground_degeneracy(SpinChainModel("tfim", 1, lam, L)) == 1


@pytest.mark.parametrize("L,expected", [(5, 1), (7, 1), (9, 3)])
def test_frustrated_cim_degeneracy(L, expected):
    assert sc.ground_degeneracy(SpinChainModel("cim", 1, 0.5, L)) == expected


def test_frustrated_cim_degenerate_selection():
    res = ground_state(SpinChainModel("cim", 1, 0.5, 9))
    assert res.degeneracy == 3 and res.momentum_selected
    assert np.allclose(sv.translate(res.state).amplitudes, res.state.amplitudes, atol=1e-9)


def test_classical_frustrated_rejected():
    with pytest.raises(ValueError):
        ground_state(SpinChainModel("tfim", 1, 0.0, 5))
    with pytest.raises(ValueError):
        ground_state(SpinChainModel("tfim", 1, 0.5, 5), degeneracy_tol=0)


def test_unfrustrated_classical_selects_all_zero_reference():
    # the doubly degenerate ferromagnet: |+...+> and |-...-> both contain |0...0>
    res = ground_state(SpinChainModel("tfim", -1, 0.0, 5))
    assert res.degeneracy == 2
    ghz_x = (sv.make_product_plus_minus(5, [1] * 5).amplitudes + sv.make_product_plus_minus(5, [-1] * 5).amplitudes)
    assert abs(np.vdot(ghz_x / np.sqrt(2), res.state.amplitudes)) == pytest.approx(1.0)


@pytest.mark.parametrize("L", [5, 7])
def test_ground_state_is_eigenvector(L):
    m = SpinChainModel("tfim", 1, 0.5, L)
    res = ground_state(m)
    H = build_hamiltonian(m)
    amp = res.state.amplitudes
    assert np.linalg.norm(H @ amp - res.energy * amp) < 1e-8
    assert sc.energy_expectation(m, amp) == pytest.approx(res.energy, abs=1e-10)


def test_gauge_largest_amplitude_real_positive():
    amp = ground_state(SpinChainModel("cim", -1, 0.8, 7)).state.amplitudes
    top = amp[np.argmax(np.abs(amp))]
    assert top.real > 0 and abs(top.imag) < 1e-14


def test_variational_gap_shrinks():
    L = 7
    wk = sv.make_wk_state(L).amplitudes
    gaps = []
    for lam in (0.2, 0.1, 0.05, 0.01):
        m = SpinChainModel("tfim", 1, lam, L)
        gaps.append(sc.energy_expectation(m, wk) - ground_state(m).energy)
    assert all(g >= -1e-12 for g in gaps)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


@pytest.mark.parametrize("L", [5, 7, 9])
def test_perturbative_overlap(L):
    gs = ground_state(SpinChainModel("tfim", 1, 0.01, L)).state
    assert abs(sv.overlap(sv.make_wk_state(L), gs)) > 0.999


def test_iterative_path_matches_dense(monkeypatch):
    m = SpinChainModel("tfim", 1, 0.5, 9)
    dense = ground_state(m)
    monkeypatch.setattr(sc, "DENSE_MAX_QUBITS", 4)
    lanczos = ground_state(m)
    assert lanczos.energy == pytest.approx(dense.energy, abs=1e-10)
    assert abs(sv.overlap(dense.state, lanczos.state)) == pytest.approx(1.0, abs=1e-8)


def test_iterative_degeneracy_not_truncated(monkeypatch):
    monkeypatch.setattr(sc, "DENSE_MAX_QUBITS", 4)
    assert sc.ground_degeneracy(SpinChainModel("tfim", 1, 0.0, 7)) == 14
