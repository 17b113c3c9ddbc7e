"""Stabilizer 2-Renyi entropy (SRE) of pure states, in bits.

Two engines evaluate the same Pauli fourth-moment sum:

* :func:`sre_naive` sums every ``<psi|P|psi>`` directly over basis states,
  ``O(8**L)``.
* :func:`sre_fast` lays the density matrix out by ``row xor column`` and
  runs a per-site Walsh-Hadamard butterfly, ``O(L 4**L)``.

Both reduce in a fixed block order with compensated summation, so results
do not depend on the worker count.
"""

from __future__ import annotations

import logging
import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import pauli
from .statevec import StateVector, as_state

log = logging.getLogger(__name__)

NAIVE_MAX_QUBITS = 11
FAST_MAX_QUBITS = 13
NEGATIVE_FLOOR = -1e-9
NORM_TOL = 1e-10
METHODS = ("naive", "fast", "analytic_w", "local_alpha1", "frustrated_local")


class EngineCapError(ValueError):
    """Raised when a state is too large for the requested engine."""


@dataclass
class SreResult:
    value: float
    method: str
    L: int
    elapsed: float = 0.0
    provenance: str = ""
    clamped: bool = False
    reliable: bool = True
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")

    def __float__(self):
        return float(self.value)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("MAGIQUE_THREADS", "1")))
    except ValueError:
        return 1


def _check_cap(L: int, cap: int, override: int | None, name: str) -> None:
    if override is not None:
        if override > cap:
            warnings.warn(
                f"{name} cap raised from {cap} to {override} qubits; "
                "runtime and memory grow exponentially",
                stacklevel=3,
            )
        cap = override
    if L > cap:
        hint = " (use sre_fast)" if name == "sre_naive" else ""
        raise EngineCapError(f"{name} supports L <= {cap}, got L = {L}{hint}")


def _check_norm(psi: StateVector) -> None:
    n = psi.norm()
    if abs(n - 1.0) > NORM_TOL:
        raise ValueError(f"state must be normalized, norm = {n!r}")


def _x_blocks(L: int, budget: int = 1 << 20) -> list[np.ndarray]:
    per = max(1, budget >> L)
    xs = np.arange(1 << L, dtype=np.uint64)
    return [xs[i : i + per] for i in range(0, xs.size, per)]


def _reduce_blocks(work: Callable[[np.ndarray], float], blocks, workers: int) -> float:
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(work, blocks))
    else:
        partials = [work(b) for b in blocks]
    return math.fsum(partials)


def _finish(total: float, L: int, method: str, t0: float, provenance: str) -> SreResult:
    value = -math.log2(total / 2**L)
    clamped = False
    if value < 0:
        if value < NEGATIVE_FLOOR:
            raise ArithmeticError(f"SRE came out negative ({value:.3e}); input not a pure state?")
        value, clamped = 0.0, True
    return SreResult(value, method, L, time.perf_counter() - t0, provenance, clamped)


def sre_naive(
    psi, *, workers: int | None = None, cap: int | None = None, provenance: str = ""
) -> SreResult:
    """SRE by direct summation of all ``4**L`` Pauli expectation values."""
    t0 = time.perf_counter()
    psi = as_state(psi)
    L = psi.num_qubits
    _check_cap(L, NAIVE_MAX_QUBITS, cap, "sre_naive")
    _check_norm(psi)
    signs = pauli.sign_matrix(L)

    def work(xs):
        e = pauli.expectations_fixed_x(psi, xs, signs)
        return float(np.sum(e**4))

    blocks = _x_blocks(L)
    total = _reduce_blocks(work, blocks, workers or default_workers())
    return _finish(total, L, "naive", t0, provenance)


def _walsh_hadamard_rows(f: np.ndarray, L: int) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis, in place."""
    rows = f.shape[0]
    for k in range(L):
        v = f.reshape(rows, -1, 2, 1 << k)
        a = v[:, :, 0, :].copy()
        b = v[:, :, 1, :]
        v[:, :, 0, :] += b
        b *= -1
        b += a
    return f


def _fast_block(amp: np.ndarray, xs: np.ndarray, L: int) -> np.ndarray:
    b = np.arange(1 << L, dtype=np.uint64)
    # rho[b ^ x, b]^* laid out as f[x, b]
    f = np.conj(amp[xs[:, None] ^ b[None, :]]) * amp[None, :]
    _walsh_hadamard_rows(f, L)
    f *= pauli.I_POWERS[np.bitwise_count(xs[:, None] & b[None, :]) % 4]
    worst = float(np.max(np.abs(f.imag)))
    if worst > pauli.IMAG_TOL:
        raise pauli.PhaseConventionError(f"expectation value has imaginary part {worst:.3e}")
    return f.real


def pauli_spectrum(psi, *, cap: int | None = None) -> np.ndarray:
    """All ``4**L`` expectation values, indexed like :attr:`PauliString.index`."""
    psi = as_state(psi)
    L = psi.num_qubits
    _check_cap(L, FAST_MAX_QUBITS, cap, "pauli_spectrum")
    out = np.empty((1 << L, 1 << L))  # [z, x]
    for xs in _x_blocks(L):
        out[:, xs] = _fast_block(psi.amplitudes, xs, L).T
    return out.reshape(-1)


def sre_fast(
    psi, *, workers: int | None = None, cap: int | None = None, provenance: str = ""
) -> SreResult:
    """SRE through the ``O(L 4**L)`` butterfly over the density matrix."""
    t0 = time.perf_counter()
    psi = as_state(psi)
    L = psi.num_qubits
    _check_cap(L, FAST_MAX_QUBITS, cap, "sre_fast")
    _check_norm(psi)
    amp = psi.amplitudes

    def work(xs):
        e = _fast_block(amp, xs, L)
        return float(np.sum(e**4))

    total = _reduce_blocks(work, _x_blocks(L), workers or default_workers())
    return _finish(total, L, "fast", t0, provenance)


def sre(psi, method: str = "fast", **kw) -> SreResult:
    if method == "naive":
        return sre_naive(psi, **kw)
    if method == "fast":
        return sre_fast(psi, **kw)
    raise ValueError(f"method must be 'naive' or 'fast', got {method!r}")


def sre_w_analytic(L: int) -> SreResult:
    """Closed form ``3 log2 L - log2(7L - 6)`` for the ``L``-qubit W state."""
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    value = 3 * math.log2(L) - math.log2(7 * L - 6)
    return SreResult(max(value, 0.0), "analytic_w", L, provenance=f"W_{L}")


@dataclass(frozen=True)
class WComponents:
    O_eq: Fraction
    O_neq: Fraction
    M2: float


def w_sum_components(L: int) -> WComponents:
    """Diagonal (``i = j``) and off-diagonal (``i != j``) Pauli sums for ``|W_L>``.

    Evaluated in exact rational arithmetic.
    """
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    O_eq = sum(
        (Fraction(L - 2 * l, L) ** 4 * math.comb(L, l) for l in range(L + 1)), Fraction(0)
    )
    O_neq = sum(
        (
            2 * Fraction(2, L) ** 4 * Fraction(L * (L - 1), 2) * math.comb(L - 2, l)
            for l in range(L - 1)
        ),
        Fraction(0),
    )
    ratio = (O_eq + O_neq) / 2**L
    M2 = -math.log2(ratio.numerator) + math.log2(ratio.denominator)
    return WComponents(O_eq, O_neq, M2)


def local_sre_alpha1(m_z: float) -> float:
    """SRE of a single qubit with ``<sigma^z> = m_z`` and no x/y polarization."""
    if abs(m_z) > 1 + 1e-12:
        raise ValueError(f"|m_z| must be <= 1, got {m_z}")
    m2 = m_z * m_z
    return max(math.log2((1 + m2) / (1 + m2 * m2)), 0.0)


def frustrated_local_estimate(L: int, m_z: float, *, log2_derivative: bool = False) -> float:
    """``L * alpha1(m_z)`` plus the first-order ``m_z -> m_z + 2/L`` shift.

    The default correction is ``4 m (1/(1+m^2) - 2m^2/(1+m^4))``, which is
    the slope of the natural-log version of ``alpha1``;
    pass ``log2_derivative=True`` to divide it by ``ln 2`` so that it is the
    true first-order term of ``L * alpha1(m_z + 2/L)``.
    """
    if L % 2 == 0 or L < 1:
        raise ValueError(f"L must be odd and positive, got {L}")
    base = L * local_sre_alpha1(m_z)
    m2 = m_z * m_z
    corr = 4 * m_z * (1 / (1 + m2) - 2 * m2 / (1 + m2 * m2))
    if log2_derivative:
        corr /= math.log(2)
    return base + corr


def ratio_R(m2_frustrated: float, m2_unfrustrated: float, L: int) -> float:
    """Frustrated-minus-unfrustrated SRE in units of the W-state SRE."""
    if L < 3:
        raise ValueError(f"L must be >= 3, got {L}")
    return (float(m2_frustrated) - float(m2_unfrustrated)) / sre_w_analytic(L).value


def local_alpha1_result(m_z: float, L: int, *, critical: bool = False, provenance: str = "") -> SreResult:
    """``L * alpha1(m_z)`` wrapped as a result row; tagged unreliable at criticality."""
    r = SreResult(L * local_sre_alpha1(m_z), "local_alpha1", L, provenance=provenance)
    r.reliable = not critical
    return r
