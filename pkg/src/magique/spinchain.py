"""Periodic Ising chains with a competing term, and their exact ground states.

The Hamiltonian is ``H = J sum_j X_j X_{j+1} - lam sum_j O_j`` on a ring,
with ``O_j = Z_j`` (transverse-field Ising, ``"tfim"``) or the three-site
cluster term ``O_j = A_{j-1} Z_j A_{j+1}`` (cluster-Ising, ``"cim"``).

The cluster outer operators ``A`` default to ``Y``, orthogonal to the
Ising axis.  That is the cluster-Ising chain whose frustrated ground state
is three-fold degenerate exactly when ``3 | L``.  ``cluster_axis="x"``
gives ``X_{j-1} Z_j X_{j+1}``, which commutes differently with the Ising
bonds and never shows that degeneracy.  ``J = +1`` on an
odd ring is topologically frustrated; ``J = -1`` is the unfrustrated
counterpart.

All matrix elements are real in the computational basis, so the operator
is assembled as a real ``scipy.sparse`` matrix.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .statevec import StateVector, kink_states, make_computational_state, translate

log = logging.getLogger(__name__)

MAX_QUBITS = 16
DENSE_MAX_QUBITS = 12
DEFAULT_DEGENERACY_TOL = 1e-7
MODEL_KINDS = ("tfim", "cim")


class EigensolverError(RuntimeError):
    """Eigensolver failed or a degenerate manifold could not be resolved."""


@dataclass(frozen=True)
class SpinChainModel:
    kind: str
    J: int
    lam: float
    L: int
    cluster_axis: str = "y"

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in MODEL_KINDS:
            raise ValueError(f"model kind must be one of {MODEL_KINDS}, got {self.kind!r}")
        if self.J not in (1, -1):
            raise ValueError(f"J must be +1 or -1, got {self.J!r}")
        if not self.lam >= 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam!r}")
        if not isinstance(self.L, (int, np.integer)) or not 3 <= self.L <= MAX_QUBITS:
            raise ValueError(f"L must be an integer in 3..{MAX_QUBITS}, got {self.L!r}")
        if self.cluster_axis not in ("x", "y"):
            raise ValueError(f"cluster_axis must be 'x' or 'y', got {self.cluster_axis!r}")
        if self.J == 1 and self.L % 2 == 0:
            raise ValueError(f"frustrated chains need odd L, got {self.L}")

    @property
    def frustrated(self) -> bool:
        return self.J == 1 and self.L % 2 == 1

    def describe(self) -> str:
        tag = "" if self.kind == "tfim" or self.cluster_axis == "y" else ",axis=x"
        return f"{self.kind}(J={self.J:+d},lambda={self.lam:g},L={self.L}{tag})"


@dataclass
class GroundStateResult:
    energy: float
    degeneracy: int
    state: StateVector
    momentum_selected: bool = False


def _bit(L: int, site: int) -> int:
    """Bit of 1-based ``site``, wrapped onto the ring."""
    return 1 << (L - 1 - (site - 1) % L)


def build_hamiltonian(model: SpinChainModel) -> sp.csr_matrix:
    """Real symmetric sparse ``H`` on ``2**L`` states."""
    L = model.L
    dim = 1 << L
    b = np.arange(dim, dtype=np.int64)
    rows, cols, vals = [], [], []
    diag = np.zeros(dim)

    for j in range(1, L + 1):
        flip = _bit(L, j) | _bit(L, j + 1)
        rows.append(b)
        cols.append(b ^ flip)
        vals.append(np.full(dim, float(model.J)))

    if model.lam != 0:
        for j in range(1, L + 1):
            zsign = 1.0 - 2.0 * ((b & _bit(L, j)) != 0)
            if model.kind == "tfim":
                diag -= model.lam * zsign
            else:
                left, right = _bit(L, j - 1), _bit(L, j + 1)
                sign = zsign
                if model.cluster_axis == "y":
                    # Y = i X Z per site; Y_a Y_c on |b> = -(-1)^(b_a + b_c) |b ^ a ^ c>
                    ya = 1.0 - 2.0 * ((b & left) != 0)
                    yc = 1.0 - 2.0 * ((b & right) != 0)
                    sign = -zsign * ya * yc
                rows.append(b)
                cols.append(b ^ (left | right))
                vals.append(-model.lam * sign)

    rows.append(b)
    cols.append(b)
    vals.append(diag)
    H = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )
    H = H.tocsr()
    H.sum_duplicates()
    H.eliminate_zeros()
    return H


def hamiltonian_operator(model: SpinChainModel) -> spla.LinearOperator:
    """Matrix-free view of ``H`` for iterative solvers."""
    H = build_hamiltonian(model)
    return spla.aslinearoperator(H)


def _lowest_dense(H: sp.spmatrix, n_want: int) -> tuple[np.ndarray, np.ndarray]:
    dense = H.toarray()
    dim = dense.shape[0]
    if n_want >= dim:
        return scipy.linalg.eigh(dense)
    return scipy.linalg.eigh(dense, subset_by_index=[0, n_want - 1])


def _lowest_iterative(H: sp.spmatrix, n_want: int) -> tuple[np.ndarray, np.ndarray]:
    """Lanczos, then a block pass so exact multiplets are not undercounted.

    Single-vector Krylov methods see one copy of each degenerate level (any
    extra copies come from rounding), so the Ritz vectors are refined by
    LOBPCG on a block twice as wide, seeded with them plus random columns.
    A final Rayleigh-Ritz step over both sets keeps the better vectors.
    """
    rng = np.random.default_rng(0)
    dim = H.shape[0]
    v0 = rng.normal(size=dim)
    try:
        w, v = spla.eigsh(
            H, k=n_want, which="SA", v0=v0, tol=1e-13, ncv=max(2 * n_want + 1, 24), maxiter=10000
        )
    except spla.ArpackNoConvergence as exc:
        raise EigensolverError(f"Lanczos did not converge: {exc}") from exc
    block = np.hstack([v, rng.normal(size=(dim, min(n_want, dim // 5 - n_want)))])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        _, vb = spla.lobpcg(H, block, largest=False, tol=1e-10, maxiter=1000)
    q, _ = np.linalg.qr(np.hstack([v, vb]))
    wr, c = scipy.linalg.eigh(q.T @ (H @ q))
    vr = q @ c
    return wr[: block.shape[1]], vr[:, : block.shape[1]]


def lowest_eigenpairs(
    model: SpinChainModel, n_want: int = 6, *, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL
) -> tuple[np.ndarray, np.ndarray, int]:
    """Lowest eigenvalues/vectors and the ground multiplicity.

    Grows ``n_want`` until the returned block extends past the ground
    manifold, so the multiplicity is never truncated.
    """
    H = build_hamiltonian(model)
    dim = H.shape[0]
    dense = model.L <= DENSE_MAX_QUBITS
    n_want = max(n_want, 6)
    while True:
        n = min(n_want, dim if dense else dim - 1)
        w, v = _lowest_dense(H, n) if dense else _lowest_iterative(H, n)
        E0 = w[0]
        cut = degeneracy_tol * max(1.0, abs(E0))
        d = int(np.sum(w - E0 <= cut))
        if d < len(w) or n >= (dim if dense else dim - 1):
            return w, v, d
        n_want *= 2


def _gauge(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    phase = vec[k] / abs(vec[k])
    return vec / phase


def _momentum_zero_basis(V: np.ndarray, L: int) -> np.ndarray:
    """Orthonormal basis of the translation-invariant part of ``span(V)``."""
    proj = np.zeros(V.shape, dtype=complex)
    for c in range(V.shape[1]):
        col = StateVector(V[:, c], check_norm=False)
        acc = np.zeros(V.shape[0], dtype=complex)
        for n in range(L):
            acc += translate(col, n).amplitudes
        proj[:, c] = acc / L
    u, s, _ = np.linalg.svd(proj, full_matrices=False)
    return u[:, s > 1e-6]


@lru_cache(maxsize=32)
def _reference_basis(J: int, L: int) -> np.ndarray:
    """Orthonormal columns spanning the reference space for degenerate selection."""
    if J == 1:
        # zero-momentum kink superpositions of each family; their relative
        # phase is model-dependent, so both are kept
        kinks = kink_states(L)
        fam = [sum(k.amplitudes for k in kinks[:L]), sum(k.amplitudes for k in kinks[L:])]
        return np.stack(fam, axis=1) / np.sqrt(L)
    return make_computational_state(L, 0).amplitudes[:, None]


def ground_state(
    model: SpinChainModel, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL
) -> GroundStateResult:
    """Lowest-energy state with a deterministic choice inside degenerate manifolds.

    A unique ground state is returned as is.  For a degenerate manifold the
    translation-invariant sector is kept, and within it the vector closest
    to a reference space: the zero-momentum kink superpositions
    ``sum_k |k>`` and ``sum_k |k'>`` for ``J = +1`` (this contains the
    symmetric kink state), ``|0...0>`` for ``J = -1``.  The largest
    amplitude is made real positive in both cases.
    """
    if degeneracy_tol <= 0:
        raise ValueError("degeneracy_tol must be positive")
    if model.J == 1 and model.lam == 0:
        raise ValueError("the frustrated classical point (lambda = 0) has no unique ground state")
    w, v, d = lowest_eigenpairs(model, degeneracy_tol=degeneracy_tol)
    E0 = float(w[0])
    if d == 1:
        vec = _gauge(v[:, 0].astype(complex))
        return GroundStateResult(E0, 1, StateVector(vec / np.linalg.norm(vec)), False)

    basis = _momentum_zero_basis(v[:, :d], model.L)
    if basis.shape[1] == 0:
        raise EigensolverError(
            f"{model.describe()}: {d}-fold ground manifold has no zero-momentum state"
        )
    ref = _reference_basis(model.J, model.L)
    _, s, vh = np.linalg.svd(ref.conj().T @ basis)
    if s[0] < 1e-8:
        log.warning("%s: reference space orthogonal to zero-momentum sector", model.describe())
        vec = basis[:, 0]
    else:
        vec = basis @ vh[0].conj()
    vec = _gauge(vec / np.linalg.norm(vec))
    return GroundStateResult(E0, d, StateVector(vec / np.linalg.norm(vec)), True)


def ground_degeneracy(model: SpinChainModel, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL) -> int:
    return lowest_eigenpairs(model, degeneracy_tol=degeneracy_tol)[2]


def energy_expectation(model: SpinChainModel, psi) -> float:
    amp = np.asarray(psi, dtype=complex)
    H = build_hamiltonian(model)
    return float(np.vdot(amp, H @ amp).real)
