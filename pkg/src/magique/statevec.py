"""Dense state vectors and the named states used throughout the package.

Amplitudes are indexed by computational (sigma^z) basis bitstrings with
site 1 on the most significant bit.  ``|+>`` and ``|->`` are built
explicitly as ``(|0> +- |1>)/sqrt(2)``.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

MAX_QUBITS = 16
NORM_TOL = 1e-12

KET_0 = np.array([1.0, 0.0], dtype=complex)
KET_1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2)


class StateVector:
    """Immutable dense amplitude vector of length ``2**L``."""

    __slots__ = ("_amp", "_L")

    def __init__(self, amplitudes, *, check_norm: bool = True, copy: bool = True):
        amp = np.array(amplitudes, dtype=complex, copy=copy).reshape(-1)
        n = amp.size
        L = n.bit_length() - 1
        if n < 2 or (1 << L) != n:
            raise ValueError(f"amplitude vector length {n} is not 2**L with L >= 1")
        if L > MAX_QUBITS:
            raise ValueError(f"{L} qubits exceeds the {MAX_QUBITS}-qubit cap")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        if check_norm:
            norm = np.linalg.norm(amp)
            if abs(norm - 1.0) > NORM_TOL:
                raise ValueError(f"state not normalized (norm = {norm!r})")
        amp.flags.writeable = False
        self._amp = amp
        self._L = L

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amp

    @property
    def num_qubits(self) -> int:
        return self._L

    @property
    def dim(self) -> int:
        return self._amp.size

    def norm(self) -> float:
        return float(np.linalg.norm(self._amp))

    def normalized(self) -> "StateVector":
        return StateVector(self._amp / self.norm())

    def tensor(self) -> np.ndarray:
        """View as an ``L``-index tensor, axis ``j-1`` for site ``j``."""
        return self._amp.reshape((2,) * self._L)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._amp.copy() if copy else self._amp
        return self._amp.astype(dtype)

    def __len__(self):
        return self._amp.size

    def __repr__(self):
        return f"StateVector(num_qubits={self._L})"


def as_state(psi) -> StateVector:
    """Coerce arrays to :class:`StateVector` without a norm check."""
    if isinstance(psi, StateVector):
        return psi
    return StateVector(psi, check_norm=False)


def _check_L(L: int, lo: int = 1, hi: int = MAX_QUBITS) -> None:
    if not isinstance(L, (int, np.integer)) or not lo <= L <= hi:
        raise ValueError(f"L must be an integer in {lo}..{hi}, got {L!r}")


def _check_odd(L: int) -> None:
    if L % 2 == 0:
        raise ValueError(f"L must be odd, got {L}")


def make_product_state(site_kets: Sequence[np.ndarray]) -> StateVector:
    """Tensor product of normalized single-qubit kets, site 1 first."""
    _check_L(len(site_kets))
    kets = [np.asarray(k, dtype=complex) / np.linalg.norm(k) for k in site_kets]
    return StateVector(reduce(np.kron, kets))


def make_product_plus_minus(L: int, signs: Sequence[int]) -> StateVector:
    """``|s_1> x ... x |s_L>`` in the sigma^x eigenbasis, ``s_j`` = +1 or -1."""
    _check_L(L)
    if len(signs) != L:
        raise ValueError(f"expected {L} signs, got {len(signs)}")
    kets = []
    for s in signs:
        if s not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got {s!r}")
        kets.append(KET_PLUS if s == 1 else KET_MINUS)
    return make_product_state(kets)


def make_computational_state(L: int, bits: int = 0) -> StateVector:
    _check_L(L)
    amp = np.zeros(1 << L, dtype=complex)
    amp[bits] = 1.0
    return StateVector(amp)


def make_t_state() -> StateVector:
    """Single-qubit magic state ``(|0> + exp(-i pi/4)|1>)/sqrt(2)``."""
    return StateVector(np.array([1.0, np.exp(-1j * np.pi / 4)]) / np.sqrt(2))


def make_w_state(L: int) -> StateVector:
    """``L**-1/2 sum_j sigma^z_j |->^L``: one ``|+>`` among ``|->`` sites."""
    _check_L(L)
    amp = np.zeros(1 << L, dtype=complex)
    for j in range(L):
        kets = [KET_MINUS] * L
        kets[j] = KET_PLUS
        amp += reduce(np.kron, kets)
    return StateVector(amp / np.sqrt(L))


def make_ghz(L: int) -> StateVector:
    _check_L(L)
    amp = np.zeros(1 << L, dtype=complex)
    amp[0] = amp[-1] = 1 / np.sqrt(2)
    return StateVector(amp)


def translate(psi, times: int = 1) -> StateVector:
    """Cyclic site shift ``j -> j + 1 (mod L)`` applied ``times`` times."""
    psi = as_state(psi)
    L = psi.num_qubits
    t = psi.tensor()
    # one step: out[a_1..a_L] = psi[a_2, ..., a_L, a_1]
    out = np.transpose(t, axes=[(a - times) % L for a in range(L)])
    return StateVector(out.reshape(-1), check_norm=False)


def make_kink_state(L: int, k: int, primed: bool = False) -> StateVector:
    """Kink (domain-wall) state ``|k>`` or ``|k'>`` of an odd ring.

    The unprimed family flips the even sites of ``|->^L``; the primed one
    flips the even sites of ``|+>^L``.  ``k`` translates the defect.
    """
    _check_L(L)
    _check_odd(L)
    if not 1 <= k <= L:
        raise ValueError(f"k must lie in 1..{L}, got {k}")
    odd, even = (KET_PLUS, KET_MINUS) if primed else (KET_MINUS, KET_PLUS)
    kets = [even if (j % 2 == 0) else odd for j in range(1, L + 1)]
    base = StateVector(reduce(np.kron, kets))
    return translate(base, k - 1) if k > 1 else base


def kink_states(L: int) -> list[StateVector]:
    """All ``2L`` kink states: unprimed ``k = 1..L`` then primed."""
    return [make_kink_state(L, k, p) for p in (False, True) for k in range(1, L + 1)]


def make_wk_state(L: int) -> StateVector:
    """Zero-momentum symmetric superposition of the ``2L`` kink states."""
    _check_L(L, 3, 15)
    _check_odd(L)
    amp = sum(s.amplitudes for s in kink_states(L))
    return StateVector(amp / np.sqrt(2 * L))


def overlap(psi, phi) -> complex:
    """``<psi|phi>``."""
    psi, phi = as_state(psi), as_state(phi)
    if psi.num_qubits != phi.num_qubits:
        raise ValueError(
            f"dimension mismatch: {psi.num_qubits} vs {phi.num_qubits} qubits"
        )
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def site_magnetization_z(psi, j: int) -> float:
    """``<psi|sigma^z_j|psi>`` for 1-based site ``j``."""
    psi = as_state(psi)
    L = psi.num_qubits
    if not 1 <= j <= L:
        raise IndexError(f"site {j} outside 1..{L}")
    prob = np.abs(psi.tensor()) ** 2
    marg = prob.sum(axis=tuple(a for a in range(L) if a != j - 1))
    return float(marg[0] - marg[1])


def random_state(L: int, rng: np.random.Generator) -> StateVector:
    """Haar-like random state from complex Gaussian amplitudes."""
    _check_L(L)
    amp = rng.normal(size=1 << L) + 1j * rng.normal(size=1 << L)
    return StateVector(amp / np.linalg.norm(amp))
