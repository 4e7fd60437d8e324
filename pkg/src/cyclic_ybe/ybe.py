"""Yang-Baxter residuals and the Yang-Baxterization of B_{n,phi}.

Braided form:   (R (x) I)(I (x) R)(R (x) I) = (I (x) R)(R (x) I)(I (x) R)
Algebraic form: R12 R13 R23 = R23 R13 R12

Both residuals are Frobenius norms of the difference of the two 8x8 sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclic import swap_gate
from .families import BnPhi
from .tensor_core import I2, I4, ComplexMatrix, as_matrix, inverse


def _four_by_four(r) -> ComplexMatrix:
    r = as_matrix(r)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {r.shape}")
    return r


def braided_ybe_residual(r) -> float:
    r = _four_by_four(r)
    r12 = np.kron(r, I2)
    r23 = np.kron(I2, r)
    return float(np.linalg.norm(r12 @ r23 @ r12 - r23 @ r12 @ r23))


def algebraic_ybe_residual(r) -> float:
    r = _four_by_four(r)
    r12 = np.kron(r, I2)
    r23 = np.kron(I2, r)
    p23 = np.kron(I2, swap_gate())
    r13 = p23 @ r12 @ p23
    return float(np.linalg.norm(r12 @ r13 @ r23 - r23 @ r13 @ r12))


def braid_relation_residual(b) -> float:
    """Three-strand braid relation s1 s2 s1 = s2 s1 s2 with s1 = B (x) I, s2 = I (x) B."""
    b = _four_by_four(b)
    s1 = np.kron(b, I2)
    s2 = np.kron(I2, b)
    return float(np.linalg.norm(s1 @ s2 @ s1 - s2 @ s1 @ s2))


@dataclass(frozen=True)
class EigenTriple:
    lambda1: complex
    lambda2: complex
    lambda3: complex

    def __post_init__(self):
        vals = (self.lambda1, self.lambda2, self.lambda3)
        if any(abs(v) < 1e-12 for v in vals):
            raise ValueError("eigenvalues must be non-zero")
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(vals[i] - vals[j]) < 1e-12:
                    raise ValueError("eigenvalues must be pairwise distinct")


def _ab(n: int) -> tuple[float, float]:
    if int(n) != n or n < 2:
        raise ValueError(f"n must be >= 2 (got {n})")
    return math.cos(2.0 * math.pi / n), math.sin(2.0 * math.pi / n)


def eigentriple_bnphi(n: int, phi: float = 0.0) -> EigenTriple:
    """(a + bi, -a + bi, a - bi), a = cos 2pi/n, b = sin 2pi/n; a + bi is the double root.

    The spectrum does not depend on phi: the {|00>,|11>} block has eigenvalues
    a +- ib and the {|01>,|10>} block has ib +- a.
    """
    a, b = _ab(n)
    if n == 2:
        raise ValueError("n = 2 is degenerate: b = 0 collapses the triple to {1, -1}")
    if n == 4:
        raise ValueError("n = 4 is degenerate: a = 0 makes a + bi = -a + bi")
    return EigenTriple(complex(a, b), complex(-a, b), complex(a, -b))


def characteristic_residual(g, lam: complex) -> float:
    """|det(g - lam I)|, the analytic-eigenvalue guard."""
    return float(abs(np.linalg.det(_four_by_four(g) - lam * I4)))


def yang_baxterize(b, lam: EigenTriple, x: float) -> ComplexMatrix:
    """l1 l3 x (x-1) B^{-1} + (l1 + l2 + l3 + l1 l3 / l2) x I - (x-1) B."""
    b = _four_by_four(b)
    b_inv = inverse(b)
    l1, l2, l3 = lam.lambda1, lam.lambda2, lam.lambda3
    middle = l1 + l2 + l3 + l1 * l3 / l2
    return l1 * l3 * x * (x - 1) * b_inv + middle * x * I4 - (x - 1) * b


def rx(n: int, phi: float, x: float) -> ComplexMatrix:
    """Unnormalized R(x) = x(x-1) B^{-1} - (x-1) B for B = B_{n,phi}."""
    b = BnPhi(n, phi).matrix()
    return x * (x - 1) * b.conj().T - (x - 1) * b


def rho(n: int, x: float) -> float:
    """Normalization scalar with R(x) R(x)^dag = rho I: a^2 (x-1)^4 + b^2 (x^2-1)^2."""
    a, b = _ab(n)
    return a * a * (x - 1) ** 4 + b * b * (x * x - 1) ** 2


def _check_x(x: float) -> None:
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if x == 1:
        raise ValueError("x = 1 gives the zero matrix, no normalization")


def normalized_rx(n: int, phi: float, x: float) -> ComplexMatrix:
    """R(x) / sqrt(rho): unitary, equal to B_{n,phi} at x = 0.

    Differs from ``reduced_rx`` by the factor sign(x - 1).
    """
    _check_x(x)
    return rx(n, phi, x) / math.sqrt(rho(n, x))


def reduced_rx(n: int, phi: float, x: float) -> ComplexMatrix:
    """The simplified k-form, (x - 1) cancelled out of R(x)/sqrt(rho) without its sign.

    k * [[a(x-1), 0, 0, bi(x+1)e^{i phi}], [0, -bi(x+1), a(x-1), 0], ...],
    k = 1 / sqrt(a^2 (x-1)^2 + b^2 (x+1)^2).  Equals R_theta(theta_of(n, x), phi).
    """
    _check_x(x)
    a, b = _ab(n)
    k = 1.0 / math.hypot(a * (x - 1), b * (x + 1))
    return k * _rtheta_entries(a * (x - 1), b * (x + 1), phi)


def _rtheta_entries(c: float, s: float, phi: float) -> ComplexMatrix:
    e = complex(math.cos(phi), math.sin(phi))
    return np.array(
        [
            [c, 0, 0, 1j * s * e],
            [0, -1j * s, c, 0],
            [0, c, -1j * s, 0],
            [1j * s / e, 0, 0, c],
        ],
        dtype=complex,
    )


def r_theta(theta: float, phi: float) -> ComplexMatrix:
    """The unitary two-angle gate R(theta, phi) driving both Hamiltonians."""
    return _rtheta_entries(math.cos(theta), math.sin(theta), phi)


def theta_of(n: int, x: float) -> float:
    """Angle in (-pi, pi] with cos ~ a(x-1), sin ~ b(x+1)."""
    _check_x(x)
    a, b = _ab(n)
    theta = math.atan2(b * (x + 1), a * (x - 1))
    # atan2(-0.0, negative) is -pi
    return math.pi if theta == -math.pi else theta
