"""Vibronic toolkit for group-IV-vacancy color centers in diamond."""

from .basis import VibronicBasis, OperatorMatrix
from .hamiltonian import ManifoldParams, load_params, all_params
from .solver import EigenSolution, diagonalize, solve_manifold

__all__ = [
    "VibronicBasis", "OperatorMatrix", "ManifoldParams", "load_params",
    "all_params", "EigenSolution", "diagonalize", "solve_manifold",
]

__version__ = "0.1.0"
