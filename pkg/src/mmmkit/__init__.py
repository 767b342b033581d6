"""Exact symbolic toolkit for near-primitive characteristic classes and
bordism-invariant generalised Miller-Morita-Mumford numbers."""

__version__ = "0.1.0"

from .errors import (
    AlphabetMismatch,
    DimensionMismatch,
    InhomogeneousError,
    MMMKitError,
    ParseError,
    QueryError,
)
from .exactq import QMatrix, Subspace, kernel_basis, membership, rref, subspace_equal

__all__ = [
    "AlphabetMismatch",
    "DimensionMismatch",
    "InhomogeneousError",
    "MMMKitError",
    "ParseError",
    "QueryError",
    "QMatrix",
    "Subspace",
    "kernel_basis",
    "membership",
    "rref",
    "subspace_equal",
    "__version__",
]
