"""Exact homology invariants of shifts of finite type and their factor maps."""

from .errors import (
    BoundarySquareError,
    CommutationError,
    DimensionError,
    InvariantViolation,
    SmaleHomologyError,
    ValidationError,
)
from .linalg import IntMatrix, smith_normal_form
from .abelian import FgAbelianGroup, GroupHom
from .limits import EndoModule, LimitInvariants, limit_invariants

__version__ = "0.1.0"
