"""Bit-encoded Pauli strings and their exact action on dense state vectors.

A string on ``L`` qubits is stored as two ``L``-bit words.  Site ``j``
(1-based) lives on bit ``L - j`` so that site 1 is the most significant
bit, matching the amplitude ordering used in :mod:`magique.statevec`.

Per site the letter is read from the ``(x, z)`` bit pair::

    (0, 0) -> I    (1, 0) -> X    (0, 1) -> Z    (1, 1) -> Y

and the operator is ``i**popcount(x & z) * X**x Z**z`` (Z applied first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .statevec import StateVector, as_state

MAX_ENUM_QUBITS = 16
IMAG_TOL = 1e-10
I_POWERS = np.array([1, 1j, -1, -1j])

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}


class PhaseConventionError(ArithmeticError):
    """Raised when a Hermitian expectation value comes out complex."""


def parity(words: np.ndarray) -> np.ndarray:
    """Popcount parity (0/1) of each unsigned word."""
    return (np.bitwise_count(words) & 1).astype(np.int8)


@dataclass(frozen=True)
class PauliString:
    length: int
    x_mask: int = 0
    z_mask: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be positive, got {self.length}")
        full = (1 << self.length) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask bits set above the string length")
        if self.x_mask < 0 or self.z_mask < 0:
            raise ValueError("masks must be nonnegative")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a letter word such as ``"XIZY"`` (site 1 first)."""
        label = label.strip().upper()
        L = len(label)
        x = z = 0
        for j, ch in enumerate(label):
            try:
                xb, zb = _BITS[ch]
            except KeyError:
                raise ValueError(f"unknown Pauli letter {ch!r}") from None
            bit = L - 1 - j
            x |= xb << bit
            z |= zb << bit
        return cls(L, x, z)

    @classmethod
    def single(cls, length: int, site: int, letter: str) -> "PauliString":
        """One non-identity letter on ``site`` (1-based)."""
        if not 1 <= site <= length:
            raise IndexError(f"site {site} outside 1..{length}")
        word = ["I"] * length
        word[site - 1] = letter
        return cls.from_label("".join(word))

    @classmethod
    def from_index(cls, length: int, index: int) -> "PauliString":
        """Inverse of :attr:`index`."""
        if not 0 <= index < 4**length:
            raise ValueError(f"index {index} outside 0..4**{length}")
        full = (1 << length) - 1
        return cls(length, index & full, index >> length)

    @property
    def index(self) -> int:
        """Position in the enumeration order, ``(z_mask << L) | x_mask``."""
        return (self.z_mask << self.length) | self.x_mask

    @property
    def label(self) -> str:
        out = []
        for j in range(self.length):
            bit = self.length - 1 - j
            out.append(_LETTERS[(self.x_mask >> bit) & 1, (self.z_mask >> bit) & 1])
        return "".join(out)

    @property
    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def phase(self) -> int:
        """Exponent ``k`` of the ``i**k`` prefactor in front of ``X**x Z**z``."""
        return (self.x_mask & self.z_mask).bit_count() % 4

    def __str__(self) -> str:
        return self.label

    def matrix(self) -> np.ndarray:
        """Dense ``2**L x 2**L`` matrix; for tests and small L only."""
        mats = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        out = np.ones((1, 1), dtype=complex)
        for ch in self.label:
            out = np.kron(out, mats[ch])
        return out


def _check_length(P: PauliString, psi: StateVector) -> None:
    if P.length != psi.num_qubits:
        raise ValueError(
            f"dimension mismatch: Pauli string on {P.length} qubits, "
            f"state on {psi.num_qubits}"
        )


def _basis_index(L: int) -> np.ndarray:
    return np.arange(1 << L, dtype=np.uint64)


def apply_pauli(P: PauliString, psi) -> StateVector:
    """Return ``P|psi>``, including the ``i`` phases carried by Y letters."""
    psi = as_state(psi)
    _check_length(P, psi)
    b = _basis_index(psi.num_qubits)
    amp = psi.amplitudes
    sign = 1 - 2 * parity(b & np.uint64(P.z_mask)).astype(np.float64)
    out = np.empty_like(amp)
    out[b ^ np.uint64(P.x_mask)] = sign * amp
    out *= I_POWERS[P.phase]
    return StateVector(out, check_norm=False)


def _real_part(value: complex, tol: float = IMAG_TOL) -> float:
    if abs(value.imag) > tol:
        raise PhaseConventionError(
            f"expectation value has imaginary part {value.imag:.3e}"
        )
    return float(value.real)


def expectation(P: PauliString, psi) -> float:
    """Exact ``<psi|P|psi>``.

    Imaginary residue up to ``1e-10`` is dropped; anything larger raises
    :class:`PhaseConventionError`.
    """
    psi = as_state(psi)
    _check_length(P, psi)
    b = _basis_index(psi.num_qubits)
    amp = psi.amplitudes
    sign = 1 - 2 * parity(b & np.uint64(P.z_mask)).astype(np.float64)
    raw = np.vdot(amp[b ^ np.uint64(P.x_mask)], sign * amp) * I_POWERS[P.phase]
    return _real_part(complex(raw))


def sign_matrix(L: int) -> np.ndarray:
    """``S[z, b] = (-1)**popcount(z & b)`` as float64."""
    b = _basis_index(L)
    return (1 - 2 * parity(b[:, None] & b[None, :])).astype(np.float64)


def expectations_fixed_x(psi, x_masks, signs: np.ndarray | None = None) -> np.ndarray:
    """Direct-sum expectations for every ``z_mask`` at each given ``x_mask``.

    Returns a real array of shape ``(len(x_masks), 2**L)`` whose entry
    ``[a, z]`` equals ``expectation(PauliString(L, x_masks[a], z), psi)``.
    Each entry is an explicit sum over the ``2**L`` basis states, so the
    cost is ``O(4**L)`` per x mask.
    """
    psi = as_state(psi)
    L = psi.num_qubits
    amp = psi.amplitudes
    b = _basis_index(L)
    xs = np.asarray(x_masks, dtype=np.uint64)
    if signs is None:
        signs = sign_matrix(L)
    # f[b, a] = conj(psi[b ^ x_a]) * psi[b]
    f = np.conj(amp[b[:, None] ^ xs[None, :]]) * amp[:, None]
    # contiguous copies: BLAS on strided .real/.imag views is ~100x slower
    raw = (signs @ np.ascontiguousarray(f.real)) + 1j * (signs @ np.ascontiguousarray(f.imag))
    raw = raw.T
    raw = raw * I_POWERS[np.bitwise_count(xs[:, None] & b[None, :]) % 4]
    worst = float(np.max(np.abs(raw.imag))) if raw.size else 0.0
    if worst > IMAG_TOL:
        raise PhaseConventionError(f"expectation value has imaginary part {worst:.3e}")
    return raw.real.copy()


def _check_enum_length(L: int) -> None:
    if not isinstance(L, (int, np.integer)) or not 1 <= L <= MAX_ENUM_QUBITS:
        raise ValueError(f"L must be an integer in 1..{MAX_ENUM_QUBITS}, got {L!r}")


def enumerate_paulis(L: int, start: int = 0, stop: int | None = None) -> Iterator[PauliString]:
    """Yield Pauli strings in index order over ``[start, stop)``.

    The full range holds all ``4**L`` strings; for ``L = 1`` the order is
    I, X, Z, Y.
    """
    _check_enum_length(L)
    total = 4**L
    stop = total if stop is None else stop
    if not 0 <= start <= stop <= total:
        raise ValueError(f"range [{start}, {stop}) outside 0..{total}")
    full = (1 << L) - 1
    for idx in range(start, stop):
        yield PauliString(L, idx & full, idx >> L)


def chunk_ranges(L: int, n_chunks: int) -> list[tuple[int, int]]:
    """Split ``range(4**L)`` into ``n_chunks`` contiguous near-equal ranges."""
    _check_enum_length(L)
    if n_chunks < 1:
        raise ValueError("n_chunks must be positive")
    total = 4**L
    edges = [total * k // n_chunks for k in range(n_chunks + 1)]
    return list(zip(edges[:-1], edges[1:]))
