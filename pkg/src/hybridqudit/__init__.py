"""Dense simulation and analysis of gates on hybrid-dimension qudit registers."""

from ._backend import BACKEND
from .entanglement import (
    e_sum_closed_form,
    entropy,
    lemma1_experiment,
    operator_entanglement,
    operator_schmidt,
    schmidt_state,
)
from .gates import (
    Gate,
    controlled_u,
    fourier,
    fredkin,
    partial_swap,
    pauli_x,
    pauli_z,
    sum_gate,
    sum_prime,
    swap_fujii,
    swap_via_sums,
    toffoli,
)
from .linalg import kron, max_entry_distance_up_to_phase, realign, svd
from .pauli import PauliLabel, conjugate, lemma2_check, pauli_matrix, pauli_membership
from .register import HybridRegister, StateVector, apply, basis_state, embed

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Gate",
    "HybridRegister",
    "PauliLabel",
    "StateVector",
    "apply",
    "basis_state",
    "conjugate",
    "controlled_u",
    "e_sum_closed_form",
    "embed",
    "entropy",
    "fourier",
    "fredkin",
    "kron",
    "lemma1_experiment",
    "lemma2_check",
    "max_entry_distance_up_to_phase",
    "operator_entanglement",
    "operator_schmidt",
    "partial_swap",
    "pauli_matrix",
    "pauli_membership",
    "pauli_x",
    "pauli_z",
    "realign",
    "schmidt_state",
    "sum_gate",
    "sum_prime",
    "svd",
    "swap_fujii",
    "swap_via_sums",
    "toffoli",
]
