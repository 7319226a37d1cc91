"""Positive-definite inner products on Temperley-Lieb standard modules.

The Gram matrix of an oriented-diagram functional on the cup basis of each
spin sector is built combinatorially and checked against the XXZ spin chain.
"""

from __future__ import annotations

from .cupbasis import Tableau, enumerate_basis, qgroup_action, sector_matrices
from .diagrams import Word, compose, evaluate_word, render_diagram, star
from .gram import gram_full, gram_matrix, gram_wmax, omega
from .scalars import DEFAULT_TOL, TOL_ENV_VAR, QParam, loop_weight, quantum_integer
from .spinchain import basis_change, hamiltonian_spin
from .verify import (
    VerificationReport,
    eta_checks,
    reconstruct_eta,
    spectrum_check,
    transfer_checks,
    transfer_matrix,
    verify_conjecture,
)

__all__ = [
    "DEFAULT_TOL", "TOL_ENV_VAR", "QParam", "Tableau", "VerificationReport", "Word",
    "basis_change", "compose", "enumerate_basis", "eta_checks", "evaluate_word",
    "gram_full", "gram_matrix", "gram_wmax", "hamiltonian_spin", "loop_weight", "omega",
    "qgroup_action", "quantum_integer", "reconstruct_eta", "render_diagram",
    "sector_matrices", "spectrum_check", "star", "transfer_checks", "transfer_matrix",
    "verify_conjecture",
]
