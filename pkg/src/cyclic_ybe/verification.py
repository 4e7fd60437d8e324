from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .cyclic import swap_gate
from .families import pauli_decomposition
from .physics import is_entangling
from .tensor_core import as_matrix, unitarity_residual
from .ybe import algebraic_ybe_residual, braided_ybe_residual


@dataclass(frozen=True)
class VerificationReport:
    """Residuals for one 4x4 matrix, recomputed from the matrix itself.

    ``algebraic_ybe_residual`` is taken on SWAP . g, the algebraic partner of
    a braided solution g. Entangling status is informational and never
    affects ``passed``.
    """

    unitarity_residual: float
    braided_ybe_residual: float
    algebraic_ybe_residual: float
    pauli_reconstruction_residual: float
    entangling: bool
    witness: Optional[list[complex]]
    tol: float

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "unitarity": self.unitarity_residual <= self.tol,
            "braidedYbe": self.braided_ybe_residual <= self.tol,
            "algebraicYbe": self.algebraic_ybe_residual <= self.tol,
            "pauliReconstruction": self.pauli_reconstruction_residual <= self.tol,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return asdict(self)


def verify_matrix(g, tol: float = 1e-12, sample_count: int = 1000, seed: int = 0) -> VerificationReport:
    g = as_matrix(g)
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {g.shape}")
    ent, witness = is_entangling(g, sample_count=sample_count, seed=seed)
    return VerificationReport(
        unitarity_residual=unitarity_residual(g),
        braided_ybe_residual=braided_ybe_residual(g),
        algebraic_ybe_residual=algebraic_ybe_residual(swap_gate() @ g),
        pauli_reconstruction_residual=pauli_decomposition(g).residual(g),
        entangling=ent,
        witness=None if witness is None else [complex(z) for z in np.asarray(witness)],
        tol=tol,
    )
