"""Hamiltonians generated by R(theta, phi), their eigen-system, Berry phases
and entanglement diagnostics.

hbar = 1. Drives are linear in time, so d/dt acts as phidot * d/dphi or
thetadot * d/dtheta, and H = i (dR/dt) R^dag.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .tensor_core import (
    COMPUTATIONAL_BASIS,
    I4,
    S_MINUS,
    S_PLUS,
    S_Z,
    SIGMA_X,
    SIGMA_Y,
    ComplexMatrix,
    as_matrix,
    frobenius_distance,
)
from .ybe import r_theta

Branch = Literal["plus", "minus"]

# |1 +- sin(theta)| below this counts as the singular point of that branch
SINGULAR_TOL = 1e-10


class SingularBranchError(ValueError):
    pass


@dataclass(frozen=True)
class HamiltonianSpec:
    matrix: ComplexMatrix
    drive_rate: float
    theta: float
    phi: float
    kind: Literal["phi", "theta"]

    def hermiticity_residual(self) -> float:
        return frobenius_distance(self.matrix, self.matrix.conj().T)


def hamiltonian_phi(theta: float, phi: float, phidot: float) -> HamiltonianSpec:
    """Closed form of i (dR/dt) R^dag with phi(t) = phi0 + phidot t."""
    s, c = math.sin(theta), math.cos(theta)
    e = cmath.exp(1j * phi)
    m = phidot * s * np.array(
        [
            [-s, 0, 0, -1j * c * e],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [1j * c / e, 0, 0, s],
        ],
        dtype=complex,
    )
    return HamiltonianSpec(m, phidot, theta, phi, "phi")


def hamiltonian_phi_fd(theta: float, phi: float, phidot: float, delta: float = 1e-5) -> ComplexMatrix:
    """Central-difference oracle for ``hamiltonian_phi``."""
    if not 0 < delta <= 1e-3:
        raise ValueError(f"delta must lie in (0, 1e-3], got {delta}")
    dr = (r_theta(theta, phi + phidot * delta) - r_theta(theta, phi - phidot * delta)) / (2 * delta)
    return 1j * dr @ r_theta(theta, phi).conj().T


@dataclass(frozen=True)
class PhiSpinCoefficients:
    """H = c_z1 Sz(x)1 + c_1z 1(x)Sz + c_pp e^{i phi} S+(x)S+ + c_mm e^{-i phi} S-(x)S-."""

    c_z1: complex
    c_1z: complex
    c_pp: complex
    c_mm: complex
    phi: float

    def reconstruct(self) -> ComplexMatrix:
        e = cmath.exp(1j * self.phi)
        return (
            self.c_z1 * np.kron(S_Z, np.eye(2))
            + self.c_1z * np.kron(np.eye(2), S_Z)
            + self.c_pp * e * np.kron(S_PLUS, S_PLUS)
            + self.c_mm / e * np.kron(S_MINUS, S_MINUS)
        )


def spin_decomposition_phi(theta: float, phi: float, phidot: float) -> PhiSpinCoefficients:
    s, c = math.sin(theta), math.cos(theta)
    free = -phidot * s * s
    # |c_pp| = |phidot| C / 2 with C = |sin 2 theta|
    interaction = -1j * phidot * s * c
    return PhiSpinCoefficients(free, free, interaction, -interaction, phi)


def hamiltonian_theta(thetadot: float, phi: float, theta: float = 0.0) -> HamiltonianSpec:
    """Anti-diagonal H for theta(t) = theta0 + thetadot t; independent of theta0.

    Entries (1,4) = -thetadot e^{i phi}, (2,3) = (3,2) = thetadot,
    (4,1) = -thetadot e^{-i phi}; this is the sign convention that matches
    the finite-difference oracle.
    """
    e = cmath.exp(1j * phi)
    m = thetadot * np.array(
        [[0, 0, 0, -e], [0, 0, 1, 0], [0, 1, 0, 0], [-1 / e, 0, 0, 0]], dtype=complex
    )
    return HamiltonianSpec(m, thetadot, theta, phi, "theta")


def hamiltonian_theta_fd(theta: float, phi: float, thetadot: float, delta: float = 1e-5) -> ComplexMatrix:
    if not 0 < delta <= 1e-3:
        raise ValueError(f"delta must lie in (0, 1e-3], got {delta}")
    dr = (r_theta(theta + thetadot * delta, phi) - r_theta(theta - thetadot * delta, phi)) / (2 * delta)
    return 1j * dr @ r_theta(theta, phi).conj().T


@dataclass(frozen=True)
class ThetaSpinCoefficients:
    """H = c_flip (XX + YY)/2 + c_pp e^{i phi} S+(x)S+ + c_mm e^{-i phi} S-(x)S-."""

    c_flip: complex
    c_pp: complex
    c_mm: complex
    phi: float

    def reconstruct(self) -> ComplexMatrix:
        e = cmath.exp(1j * self.phi)
        flip = 0.5 * (np.kron(SIGMA_X, SIGMA_X) + np.kron(SIGMA_Y, SIGMA_Y))
        return (
            self.c_flip * flip
            + self.c_pp * e * np.kron(S_PLUS, S_PLUS)
            + self.c_mm / e * np.kron(S_MINUS, S_MINUS)
        )


def spin_decomposition_theta(thetadot: float, phi: float) -> ThetaSpinCoefficients:
    return ThetaSpinCoefficients(thetadot, -thetadot, -thetadot, phi)


def theta_eigenstates(thetadot: float, phi: float) -> list[tuple[float, np.ndarray]]:
    """Analytic eigenpairs of ``hamiltonian_theta``: phase-rotated Bell states.

    At phi = 0 these are Psi+ (+thetadot), Psi- (-thetadot), Phi- (+thetadot)
    and Phi+ (-thetadot).
    """
    r = 1.0 / math.sqrt(2.0)
    e = cmath.exp(-1j * phi)
    return [
        (thetadot, np.array([0, r, r, 0], dtype=complex)),
        (-thetadot, np.array([0, r, -r, 0], dtype=complex)),
        (thetadot, np.array([r, 0, 0, -r * e], dtype=complex)),
        (-thetadot, np.array([r, 0, 0, r * e], dtype=complex)),
    ]


def evolve_theta(thetadot: float, phi: float, t: float) -> ComplexMatrix:
    """exp(-i H_theta t); H_theta^2 = thetadot^2 I makes this a two-term closed form."""
    h = hamiltonian_theta(1.0, phi).matrix
    w = thetadot * t
    return math.cos(w) * I4 - 1j * math.sin(w) * h


def _branch_sign(branch: str) -> int:
    if branch == "plus":
        return 1
    if branch == "minus":
        return -1
    raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


def _fg(theta: float, branch: str) -> tuple[float, float, bool]:
    """Amplitudes (f, g) of the branch ket, and whether the limit form was used.

    f = sqrt((1 +- s)/2), g = +-c / sqrt(2 (1 +- s)). The sign on g for the
    minus branch is what makes the ket an eigenvector of ``hamiltonian_phi``.
    """
    sign = _branch_sign(branch)
    s, c = math.sin(theta), math.cos(theta)
    one = 1.0 + sign * s
    if one < SINGULAR_TOL:
        # g is 0/0 here; |g| -> 1 and f -> 0
        return 0.0, 1.0, True
    return math.sqrt(one / 2.0), sign * c / math.sqrt(2.0 * one), False


def lambda_ket(theta: float, phi: float, branch: Branch) -> np.ndarray:
    """[i f e^{i phi}, 0, 0, g] for the requested branch (limit vector at the singular point)."""
    f, g, _ = _fg(theta, branch)
    return np.array([1j * f * cmath.exp(1j * phi), 0, 0, g], dtype=complex)


@dataclass(frozen=True)
class EigenPair:
    """Eigenpairs of ``hamiltonian_phi`` with energies +- phidot sin(theta).

    ket_plus is the minus-branch ``lambda_ket`` and ket_minus the plus-branch
    one: the branch with f = sqrt((1 + s)/2) has energy -phidot sin(theta).
    """

    energy_plus: float
    energy_minus: float
    ket_plus: np.ndarray
    ket_minus: np.ndarray
    singular: tuple[str, ...] = field(default=())


def eigen_system_phi(theta: float, phi: float, phidot: float) -> EigenPair:
    singular = tuple(b for b in ("plus", "minus") if _fg(theta, b)[2])
    e = phidot * math.sin(theta)
    return EigenPair(
        energy_plus=e,
        energy_minus=-e,
        ket_plus=lambda_ket(theta, phi, "minus"),
        ket_minus=lambda_ket(theta, phi, "plus"),
        singular=singular,
    )


@dataclass(frozen=True)
class BerryResult:
    closed_form: float
    numeric: float
    steps: int
    branch: Branch

    @property
    def difference(self) -> float:
        return abs(self.closed_form - self.numeric)


def berry_phase_closed_form(theta: float, branch: Branch) -> float:
    return -math.pi * (1.0 + _branch_sign(branch) * math.sin(theta))


def berry_phase(theta: float, branch: Branch, steps: int = 100_000) -> BerryResult:
    """Berry phase of ``lambda_ket`` as phi winds 0 -> 2 pi.

    The numeric value is the discrete Pancharatnam loop: minus the sum of the
    arguments of the overlaps <l(phi_k)|l(phi_k+1)> on a uniform grid, the
    last point closing onto the first.
    """
    if steps < 100:
        raise ValueError("steps must be >= 100")
    f, g, singular = _fg(theta, branch)
    if singular:
        raise SingularBranchError(f"branch {branch!r} is singular at theta={theta!r}")
    phis = 2.0 * math.pi * np.arange(steps) / steps
    first = 1j * f * np.exp(1j * phis)
    nxt_first = np.roll(first, -1)
    # components 2 and 3 vanish; component 4 is the constant g
    overlaps = np.conj(first) * nxt_first + g * g
    numeric = -float(np.sum(np.angle(overlaps)))
    return BerryResult(berry_phase_closed_form(theta, branch), numeric, steps, branch)


def berry_circle_residual(theta: float, branch: Branch) -> float:
    """|(gamma/pi + 1)^2 + C^2 - 1| with C = |cos theta|."""
    gamma = berry_phase_closed_form(theta, branch)
    return abs((gamma / math.pi + 1.0) ** 2 + math.cos(theta) ** 2 - 1.0)


def concurrence(v) -> float:
    """Pure-state concurrence 2 |c00 c11 - c01 c10|."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized (norm {np.linalg.norm(v)!r})")
    return float(2.0 * abs(v[0] * v[3] - v[1] * v[2]))


def _batch_concurrence(states: np.ndarray) -> np.ndarray:
    return 2.0 * np.abs(states[:, 0] * states[:, 3] - states[:, 1] * states[:, 2])


def random_product_states(count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` random (a|0> + b|1>) (x) (c|0> + d|1>), one per row."""
    q = rng.standard_normal((count, 2, 2)) + 1j * rng.standard_normal((count, 2, 2))
    q /= np.linalg.norm(q, axis=2, keepdims=True)
    return np.einsum("ni,nj->nij", q[:, 0], q[:, 1]).reshape(count, 4)


def is_entangling(
    g, sample_count: int = 1000, tol: float = 1e-10, seed: int = 0
) -> tuple[bool, Optional[np.ndarray]]:
    """Search for a product state that ``g`` maps to an entangled state.

    The four computational kets are tried first, then ``sample_count`` seeded
    random product states. A True answer comes with its witness; False only
    means no witness was found.
    """
    g = as_matrix(g)
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 gate, got {g.shape}")
    rng = np.random.default_rng(seed)
    candidates = np.vstack([np.array(COMPUTATIONAL_BASIS), random_product_states(sample_count, rng)])
    images = candidates @ g.T
    images /= np.linalg.norm(images, axis=1, keepdims=True)
    hits = np.flatnonzero(_batch_concurrence(images) > tol)
    if hits.size == 0:
        return False, None
    return True, candidates[hits[0]]
