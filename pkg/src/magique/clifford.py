"""Clifford gates on dense state vectors and the kink-state preparation circuit.

Gates act on a copy of the amplitude tensor with per-site butterflies, so
every gate costs ``O(2**L)``.  Sites are 1-based.

The two-qubit gate ``Cnot(j, l)`` is ``exp[i pi/4 (1 - X_j)(1 - Z_l)]``,
which equals ``1 - 2 P^-_j P^1_l``: it flips the sign of the component
where site ``j`` is ``|->`` and site ``l`` is ``|1>``.  In the computational
basis that is an X on ``j`` conditioned on ``l`` being 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .statevec import StateVector, as_state

_INV_SQRT2 = 1 / np.sqrt(2)


@dataclass(frozen=True)
class Hadamard:
    site: int

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.site,)


@dataclass(frozen=True)
class ZGate:
    site: int

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.site,)


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError(f"Cnot control and target coincide (site {self.control})")

    @property
    def sites(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class ZParityLayer:
    @property
    def sites(self) -> tuple[int, ...]:
        return ()


CliffordGate = Hadamard | ZGate | Cnot | ZParityLayer


@dataclass(frozen=True)
class CliffordCircuit:
    num_qubits: int
    gates: tuple[CliffordGate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            _check_sites(g, self.num_qubits)

    def __len__(self):
        return len(self.gates)

    def counts(self) -> Counter:
        """Gate tally keyed by class name."""
        return Counter(type(g).__name__ for g in self.gates)


def _check_sites(g: CliffordGate, L: int) -> None:
    for s in g.sites:
        if not 1 <= s <= L:
            raise ValueError(f"{g!r} addresses site {s} outside 1..{L}")


def _axis_slices(L: int, site: int, bit: int):
    idx = [slice(None)] * L
    idx[site - 1] = bit
    return tuple(idx)


def _apply_to_tensor(g: CliffordGate, t: np.ndarray) -> np.ndarray:
    L = t.ndim
    if isinstance(g, ZParityLayer):
        b = np.arange(1 << L, dtype=np.uint64)
        sign = 1 - 2 * (np.bitwise_count(b) & 1).astype(np.float64)
        return (t.reshape(-1) * sign).reshape(t.shape)
    out = t.copy()
    if isinstance(g, ZGate):
        out[_axis_slices(L, g.site, 1)] *= -1
    elif isinstance(g, Hadamard):
        s0, s1 = _axis_slices(L, g.site, 0), _axis_slices(L, g.site, 1)
        a, b = t[s0], t[s1]
        out[s0] = (a + b) * _INV_SQRT2
        out[s1] = (a - b) * _INV_SQRT2
    elif isinstance(g, Cnot):
        # X on the control-labelled site j where site l (target) reads 1
        j, l = g.control, g.target
        idx = [slice(None)] * L
        idx[l - 1] = 1
        idx0, idx1 = list(idx), list(idx)
        idx0[j - 1], idx1[j - 1] = 0, 1
        idx0, idx1 = tuple(idx0), tuple(idx1)
        out[idx0], out[idx1] = t[idx1], t[idx0]
    else:
        raise TypeError(f"not a Clifford gate: {g!r}")
    return out


def apply_gate(g: CliffordGate, psi) -> StateVector:
    psi = as_state(psi)
    _check_sites(g, psi.num_qubits)
    out = _apply_to_tensor(g, psi.tensor())
    return StateVector(out.reshape(-1), check_norm=False)


def apply_circuit(circuit: CliffordCircuit, psi) -> StateVector:
    """Apply ``circuit.gates`` in order (first gate acts first)."""
    psi = as_state(psi)
    if circuit.num_qubits != psi.num_qubits:
        raise ValueError(
            f"dimension mismatch: circuit on {circuit.num_qubits} qubits, "
            f"state on {psi.num_qubits}"
        )
    t = psi.tensor()
    for g in circuit.gates:
        t = _apply_to_tensor(g, t)
    return StateVector(t.reshape(-1), check_norm=False)


def gate_matrix(g: CliffordGate, L: int) -> np.ndarray:
    """Dense unitary of ``g`` on ``L`` qubits, built column by column."""
    eye = np.eye(1 << L, dtype=complex)
    return np.stack([apply_gate(g, eye[:, c]).amplitudes for c in range(1 << L)], axis=1)


def build_s_circuit(L: int) -> CliffordCircuit:
    """Circuit taking ``|W>`` to the zero-momentum kink superposition.

    Application order: Z-parity layer; ``Cnot(j, j+1)`` for ``j = 1..L-1``;
    Z and Hadamard on site ``L``; Z on odd sites ``1, 3, ..., L-2``;
    ``Cnot(L, L-j)`` for ``j = 1..L-1``.
    """
    if not isinstance(L, (int, np.integer)) or L < 3 or L % 2 == 0:
        raise ValueError(f"L must be odd and >= 3, got {L!r}")
    M = (L - 1) // 2
    gates: list[CliffordGate] = [ZParityLayer()]
    gates += [Cnot(j, j + 1) for j in range(1, L)]
    gates += [ZGate(L), Hadamard(L)]
    gates += [ZGate(2 * j - 1) for j in range(1, M + 1)]
    gates += [Cnot(L, L - j) for j in range(1, L)]
    return CliffordCircuit(L, gates)


def random_clifford_circuit(L: int, depth: int, rng: np.random.Generator) -> CliffordCircuit:
    gates: list[CliffordGate] = []
    for _ in range(depth):
        kind = rng.integers(4) if L > 1 else rng.integers(3)
        if kind == 0:
            gates.append(Hadamard(int(rng.integers(1, L + 1))))
        elif kind == 1:
            gates.append(ZGate(int(rng.integers(1, L + 1))))
        elif kind == 2:
            gates.append(ZParityLayer())
        else:
            c, t = rng.choice(np.arange(1, L + 1), size=2, replace=False)
            gates.append(Cnot(int(c), int(t)))
    return CliffordCircuit(L, gates)


def circuit_from_gates(L: int, gates: Iterable[CliffordGate]) -> CliffordCircuit:
    return CliffordCircuit(L, tuple(gates))
