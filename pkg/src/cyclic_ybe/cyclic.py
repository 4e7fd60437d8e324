"""R-matrices of the cyclic group algebra and the gates B_n = SWAP . R.

The quasitriangular element of C[C_n] is

    R = (1/n) sum_{a,b} w^{-ab} s^a (x) s^b,     w = exp(2 pi i / n),

pushed through the real 2x2 rotation representation of s. ``r_bruteforce``
does the n^2-term sum literally and serves as the independent check on
``r_closed_form``.
"""

from __future__ import annotations

import math

import numpy as np

from .tensor_core import ComplexMatrix

MAX_BRUTEFORCE_ORDER = 4096


def _check_order(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValueError(f"n must be >= 2 (got {n})")
    return int(n)


def rotation_rep(n: int, a: int) -> ComplexMatrix:
    """2x2 rotation by 2*pi*a/n, the image of s^a."""
    n = _check_order(n)
    if not 0 <= a < n:
        raise ValueError(f"exponent a must lie in [0, {n}), got {a}")
    # symmetric exponent keeps the angle small and makes s^{n-a} = (s^a)^T exact
    k = a if 2 * a <= n else a - n
    t = 2.0 * math.pi * k / n
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]], dtype=complex)


def r_bruteforce(n: int) -> ComplexMatrix:
    """Sum all n^2 terms of the quasitriangular element in the rotation rep."""
    n = _check_order(n)
    if n > MAX_BRUTEFORCE_ORDER:
        raise ValueError(f"brute-force summation is capped at n <= {MAX_BRUTEFORCE_ORDER}")
    reps = np.array([rotation_rep(n, a) for a in range(n)])  # (n, 2, 2)
    idx = np.arange(n)
    # reduce -ab mod n in exact integer arithmetic before the exp call
    phase_index = (-np.outer(idx, idx)) % n
    weights = np.exp(2j * math.pi * phase_index / n)
    # inner[a] = sum_b w^{-ab} s^b, then R = (1/n) sum_a s^a (x) inner[a]
    inner = (weights @ reps.reshape(n, 4)).reshape(n, 2, 2)
    r = np.einsum("aij,akl->ikjl", reps, inner).reshape(4, 4)
    return r / n


def r_closed_form(n: int) -> ComplexMatrix:
    n = _check_order(n)
    c = math.cos(2.0 * math.pi / n)
    s = math.sin(2.0 * math.pi / n)
    return np.array(
        [
            [c, 0, 0, -1j * s],
            [0, c, 1j * s, 0],
            [0, 1j * s, c, 0],
            [-1j * s, 0, 0, c],
        ],
        dtype=complex,
    )


def swap_gate() -> ComplexMatrix:
    return np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )


def bn_coefficients(n: int) -> tuple[complex, complex]:
    """(alpha, beta) = (cos 2pi/n, -i sin 2pi/n)."""
    n = _check_order(n)
    return complex(math.cos(2.0 * math.pi / n)), -1j * math.sin(2.0 * math.pi / n)


def bn_gate(n: int) -> ComplexMatrix:
    alpha, beta = bn_coefficients(n)
    return np.array(
        [
            [alpha, 0, 0, beta],
            [0, -beta, alpha, 0],
            [0, alpha, -beta, 0],
            [beta, 0, 0, alpha],
        ],
        dtype=complex,
    )


def trig_sum_pair(a: float, d: float, count: int) -> tuple[float, float]:
    """Closed-form (sum sin(a + b d), sum cos(a + b d)) over b = 0..count-1.

    Uses sin(count d/2) / sin(d/2) times the value at the midpoint angle.
    When d is a multiple of 2*pi every term equals the first one.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    half = math.sin(d / 2.0)
    if abs(half) < 1e-12:
        return count * math.sin(a), count * math.cos(a)
    ratio = math.sin(count * d / 2.0) / half
    mid = a + (count - 1) * d / 2.0
    return ratio * math.sin(mid), ratio * math.cos(mid)
