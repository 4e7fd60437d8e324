"""Dense complex matrix helpers for the 2x2 / 4x4 / 8x8 workload.

Everything is a plain ``numpy.ndarray`` of dtype ``complex128``. The wrappers
here only add the shape checks and the residual conventions used across the
package: every residual is a Frobenius norm, basis order is |00>, |01>, |10>,
|11>, and ``kron(a, b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

ComplexMatrix = NDArray[np.complex128]
Ket = NDArray[np.complex128]

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = {"I": I2, "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

# ladder operators S+- = Sx +- i Sy with S = sigma / 2; S+ |1> = |0>
S_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
S_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
S_Z = SIGMA_Z / 2

KET_00, KET_01, KET_10, KET_11 = (I4[:, k].copy() for k in range(4))
COMPUTATIONAL_BASIS = (KET_00, KET_01, KET_10, KET_11)


def as_matrix(a: ArrayLike) -> ComplexMatrix:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def matmul(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a: ArrayLike) -> ComplexMatrix:
    return as_matrix(a).conj().T


def frobenius_distance(a: ArrayLike, b: ArrayLike) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def unitarity_residual(a: ArrayLike) -> float:
    """Return max(||A A^dag - I||_F, ||A^dag A - I||_F)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"unitarity needs a square matrix, got {a.shape}")
    eye = np.eye(a.shape[0])
    ad = a.conj().T
    return max(float(np.linalg.norm(a @ ad - eye)), float(np.linalg.norm(ad @ a - eye)))


def is_unitary(a: ArrayLike, tol: float = 1e-12) -> bool:
    return unitarity_residual(a) <= tol


def inverse(a: ArrayLike, tol: float = 1e-12) -> ComplexMatrix:
    """Inverse via the adjoint when ``a`` is certified unitary, else a direct solve."""
    a = as_matrix(a)
    if is_unitary(a, tol):
        return a.conj().T
    if abs(np.linalg.det(a)) < 1e-300:
        raise ValueError("matrix is singular")
    return np.linalg.solve(a, np.eye(a.shape[0], dtype=complex))


def apply(g: ArrayLike, v: ArrayLike) -> Ket:
    g = as_matrix(g)
    v = np.asarray(v, dtype=complex)
    if v.shape != (g.shape[1],):
        raise ValueError(f"state of shape {v.shape} does not fit a {g.shape} gate")
    return g @ v


def ket(amplitudes: ArrayLike, tol: float = 1e-12) -> Ket:
    """Validate a normalized two-qubit state vector."""
    v = np.asarray(amplitudes, dtype=complex)
    if v.shape != (4,):
        raise ValueError(f"a two-qubit ket needs 4 amplitudes, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"ket is not normalized (norm {np.linalg.norm(v)!r})")
    return v


def product_state(a: ArrayLike, b: ArrayLike) -> Ket:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
