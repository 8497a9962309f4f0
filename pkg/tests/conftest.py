"""Shared fixtures and object builders for the test suite."""

import numpy as np
import pytest

import spinplanar as sp


@pytest.fixture
def ctx2():
    return sp.SpinContext(2)


@pytest.fixture
def ctx3():
    return sp.SpinContext(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


# the 5x5 Latin square used throughout (rows over symbols 1..5)
LATIN5_ROWS = np.array([
    [1, 2, 3, 4, 5],
    [2, 4, 1, 5, 3],
    [3, 5, 4, 2, 1],
    [4, 1, 5, 3, 2],
    [5, 3, 2, 1, 4],
])


def latin5() -> sp.LatinSquare:
    return sp.LatinSquare(LATIN5_ROWS.copy())


def haar_unitary(n: int, seed: int) -> np.ndarray:
    g = np.random.default_rng(seed)
    z = g.normal(size=(n, n)) + 1j * g.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def tensor_biunitary(n: int, seed: int = 11) -> sp.BiunitaryMatrix:
    """A (x) B for Haar-random unitaries A, B: always biunitary."""
    return sp.BiunitaryMatrix(n, np.kron(haar_unitary(n, seed),
                                         haar_unitary(n, seed + 1)))
