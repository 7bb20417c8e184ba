"""Exception hierarchy.  Every error carries a stable ``code`` for the CLI."""

from __future__ import annotations


class ConsimError(Exception):
    code = "domain_error"


class ShapeError(ConsimError, ValueError):
    code = "shape_error"


class SingularMatrixError(ConsimError, ArithmeticError):
    code = "singular_matrix"


class ContractError(ConsimError):
    """An input violates an invariant the operation relies on."""

    code = "contract_violation"


class CapacityError(ConsimError):
    """A partition has too few substrips of some parity for the arrows."""

    code = "capacity_error"


class PreconditionError(ConsimError, ValueError):
    code = "precondition_error"
