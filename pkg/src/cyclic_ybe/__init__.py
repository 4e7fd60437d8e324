"""Unitary Yang-Baxter gates from cyclic groups, with numerical verification."""

from .cyclic import bn_gate, r_bruteforce, r_closed_form, rotation_rep, swap_gate
from .families import (
    Barenco,
    Bn,
    BnPhi,
    Continuous,
    General,
    Graded,
    build_gate,
    pauli_decomposition,
    q_conjugate,
)
from .physics import berry_phase, concurrence, eigen_system_phi, hamiltonian_phi, is_entangling
from .ybe import algebraic_ybe_residual, braided_ybe_residual, normalized_rx, yang_baxterize

__version__ = "0.1.0"
