"""Exact toolkit for semilinear operators and consimilarity of matrix pairs."""

from ._kernel import BACKEND
from .errors import CapacityError, ConsimError, ContractError, PreconditionError, ShapeError, SingularMatrixError
from .exactmat import CMatrix, GaussianRational

__all__ = [
    "BACKEND",
    "CMatrix",
    "CapacityError",
    "ConsimError",
    "ContractError",
    "GaussianRational",
    "PreconditionError",
    "ShapeError",
    "SingularMatrixError",
]
__version__ = "0.1.0"
