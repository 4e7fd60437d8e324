"""Parametrized two-qubit gate families and their standard decompositions.

Each family is a small frozen dataclass; ``build_gate`` (or ``.matrix()``)
returns its 4x4 matrix. Parameters are validated on construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import cyclic
from .tensor_core import (
    I2,
    I4,
    PAULIS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ComplexMatrix,
    as_matrix,
    frobenius_distance,
)


def _order(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValueError(f"n must be >= 2 (got {n})")
    return int(n)


def _general_matrix(alpha: complex, beta: complex, q: complex) -> ComplexMatrix:
    return np.array(
        [
            [alpha, 0, 0, beta * q],
            [0, -beta, alpha, 0],
            [0, alpha, -beta, 0],
            [beta / q, 0, 0, alpha],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class Bn:
    n: int

    tag = "bn"

    def __post_init__(self):
        _order(self.n)

    def matrix(self) -> ComplexMatrix:
        return cyclic.bn_gate(self.n)


@dataclass(frozen=True)
class BnPhi:
    """q-deformation of B_n by the phase exp(i phi) on the corner entries."""

    n: int
    phi: float

    tag = "bnphi"

    def __post_init__(self):
        _order(self.n)

    def matrix(self) -> ComplexMatrix:
        a = math.cos(2.0 * math.pi / self.n)
        b = math.sin(2.0 * math.pi / self.n)
        e = cmath.exp(1j * self.phi)
        return np.array(
            [
                [a, 0, 0, -1j * b * e],
                [0, 1j * b, a, 0],
                [0, a, 1j * b, 0],
                [-1j * b / e, 0, 0, a],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class General:
    """alpha * SWAP + beta * S'(q); a braided YBE solution for any alpha, beta, q != 0."""

    alpha: complex
    beta: complex
    q: complex

    tag = "general"

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be non-zero")

    def matrix(self) -> ComplexMatrix:
        return _general_matrix(complex(self.alpha), complex(self.beta), complex(self.q))


@dataclass(frozen=True)
class Continuous:
    """The unitary Case-2 family: alpha = e^{it} cos(theta), beta = -i e^{it} sin(theta), q = e^{i phi}."""

    t: float
    theta: float
    phi: float

    tag = "continuous"

    def matrix(self) -> ComplexMatrix:
        c, s = math.cos(self.theta), math.sin(self.theta)
        e = cmath.exp(1j * self.phi)
        m = np.array(
            [
                [c, 0, 0, -1j * s * e],
                [0, 1j * s, c, 0],
                [0, c, 1j * s, 0],
                [-1j * s / e, 0, 0, c],
            ],
            dtype=complex,
        )
        return cmath.exp(1j * self.t) * m


@dataclass(frozen=True)
class Graded:
    """Braiding of a two-dimensional Z_n-graded space, |0> in degree d0 and |1> in d1."""

    n: int
    d0: int
    d1: int

    tag = "graded"

    def __post_init__(self):
        _order(self.n)
        for name in ("d0", "d1"):
            d = getattr(self, name)
            if int(d) != d or not 0 <= d < self.n:
                raise ValueError(f"{name} must lie in [0, {self.n}), got {d}")

    def matrix(self) -> ComplexMatrix:
        n, d0, d1 = self.n, self.d0, self.d1

        def w(k: int) -> complex:
            return cmath.exp(2j * math.pi * (k % n) / n)

        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = w(d0 * d0)
        m[1, 2] = m[2, 1] = w(d0 * d1)
        m[3, 3] = w(d1 * d1)
        return m


@dataclass(frozen=True)
class Barenco:
    """Controlled single-qubit rotation exp(i[alpha - theta n(phi).sigma]), n(phi) in the xy-plane."""

    alpha: float
    theta: float
    phi: float

    tag = "barenco"

    def matrix(self) -> ComplexMatrix:
        n_sigma = math.cos(self.phi) * SIGMA_X + math.sin(self.phi) * SIGMA_Y
        # (n.sigma)^2 = I gives the exponential in closed form
        u = cmath.exp(1j * self.alpha) * (
            math.cos(self.theta) * I2 - 1j * math.sin(self.theta) * n_sigma
        )
        return 0.5 * (np.kron(I2 + SIGMA_Z, I2) + np.kron(I2 - SIGMA_Z, u))


GateFamily = Union[Bn, BnPhi, General, Continuous, Graded, Barenco]
FAMILIES = {cls.tag: cls for cls in (Bn, BnPhi, General, Continuous, Graded, Barenco)}


def build_gate(family: GateFamily) -> ComplexMatrix:
    return family.matrix()


def q_conjugate(g, phi: float) -> ComplexMatrix:
    """(Q (x) Q) g (Q (x) Q)^{-1} with Q = diag(exp(i phi/2), 1)."""
    g = as_matrix(g)
    qq = np.kron(np.diag([cmath.exp(0.5j * phi), 1]), np.diag([cmath.exp(0.5j * phi), 1]))
    d = np.diag(qq)
    # Q(x)Q is diagonal, so conjugation only rescales entries
    return g * np.outer(d, 1.0 / d)


def unitarity_conditions(alpha: complex, beta: complex, q: complex, tol: float = 1e-12) -> bool:
    """Decide unitarity of General(alpha, beta, q) for |q| = 1 from the two scalar conditions.

    (i)  |alpha|^2 + |beta|^2 = 1
    (ii) alpha conj(beta) + beta conj(alpha) = 0
    """
    if abs(abs(q) - 1.0) > tol:
        raise ValueError(f"|q| must be 1 (got {abs(q)!r})")
    alpha, beta = complex(alpha), complex(beta)
    cond_i = abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) <= tol
    cond_ii = abs(alpha * beta.conjugate() + beta * alpha.conjugate()) <= tol
    return cond_i and cond_ii


def bell_basis() -> dict[str, np.ndarray]:
    r = 1.0 / math.sqrt(2.0)
    return {
        "phi+": np.array([r, 0, 0, r], dtype=complex),
        "phi-": np.array([r, 0, 0, -r], dtype=complex),
        "psi+": np.array([0, r, r, 0], dtype=complex),
        "psi-": np.array([0, r, -r, 0], dtype=complex),
    }


def _projector(v: np.ndarray) -> ComplexMatrix:
    return np.outer(v, v.conj())


@dataclass(frozen=True)
class BellProjectorDecomposition:
    c_identity: complex
    c_psi_minus: complex
    c_phi_plus: complex
    residual: float

    def reconstruct(self) -> ComplexMatrix:
        bell = bell_basis()
        return (
            self.c_identity * I4
            + self.c_psi_minus * _projector(bell["psi-"])
            + self.c_phi_plus * _projector(bell["phi+"])
        )


def bell_projector_decomposition(g) -> BellProjectorDecomposition:
    """Least-squares fit of g onto span{I, |Psi-><Psi-|, |Phi+><Phi+|}."""
    g = as_matrix(g)
    bell = bell_basis()
    basis = [I4, _projector(bell["psi-"]), _projector(bell["phi+"])]
    design = np.stack([b.ravel() for b in basis], axis=1)
    coeffs, *_ = np.linalg.lstsq(design, g.ravel(), rcond=None)
    fit = (design @ coeffs).reshape(4, 4)
    return BellProjectorDecomposition(
        complex(coeffs[0]), complex(coeffs[1]), complex(coeffs[2]), frobenius_distance(g, fit)
    )


PAULI_LABELS = ("I", "x", "y", "z")


@dataclass(frozen=True)
class PauliDecomposition:
    """coefficients[i][j] multiplies sigma_i (x) sigma_j, labels in PAULI_LABELS order."""

    coefficients: np.ndarray

    def __getitem__(self, key: tuple[str, str]) -> complex:
        i, j = key
        return complex(self.coefficients[PAULI_LABELS.index(i), PAULI_LABELS.index(j)])

    def reconstruct(self) -> ComplexMatrix:
        out = np.zeros((4, 4), dtype=complex)
        for i, li in enumerate(PAULI_LABELS):
            for j, lj in enumerate(PAULI_LABELS):
                out += self.coefficients[i, j] * np.kron(PAULIS[li], PAULIS[lj])
        return out

    def residual(self, g) -> float:
        return frobenius_distance(g, self.reconstruct())


def pauli_decomposition(g) -> PauliDecomposition:
    g = as_matrix(g)
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {g.shape}")
    c = np.empty((4, 4), dtype=complex)
    for i, li in enumerate(PAULI_LABELS):
        for j, lj in enumerate(PAULI_LABELS):
            c[i, j] = np.trace(np.kron(PAULIS[li], PAULIS[lj]) @ g) / 4.0
    return PauliDecomposition(c)


def graded_entangling_condition(n: int, d0: int, d1: int) -> bool:
    """True iff w^{d0^2 + d1^2} != w^{2 d0 d1}, i.e. (d0 - d1)^2 is not 0 mod n."""
    Graded(n, d0, d1)
    return (d0 * d0 + d1 * d1 - 2 * d0 * d1) % n != 0
