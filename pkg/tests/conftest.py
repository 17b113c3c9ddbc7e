from functools import reduce

import numpy as np
import pytest

PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_ACCEPTANCE_LINES: list[str] = []


def kron_all(mats):
    return reduce(np.kron, mats)


def site_op(L, ops):
    """Dense operator with ``ops[site] = 2x2 matrix`` (1-based sites)."""
    return kron_all([ops.get(j, PAULI_MATS["I"]) for j in range(1, L + 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
