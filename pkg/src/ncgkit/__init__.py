"""ncgkit: exact computations for noncommutative geometry on finite models.

Submodules: algebra and groupoid (finite algebras), homology (Hochschild and
cyclic theory), chern (pairings and Fredholm modules), star (Moyal products),
psido (formal pseudodifferential operators), hopf (Hopf cyclic theory),
toeplitz (Toeplitz index), io and cli (JSON and the `ncg` command).
"""
from .algebra import FinAlgebra, build_algebra, group_algebra, matrix_algebra, rational_torus
from .errors import (CertificationError, NCGError, NotPositiveError, PreconditionError, SplittingError,
                     TruncationError, ValidationError)

__version__ = "0.1.0"

__all__ = [
    "FinAlgebra", "build_algebra", "group_algebra", "matrix_algebra", "rational_torus",
    "NCGError", "ValidationError", "PreconditionError", "NotPositiveError", "SplittingError",
    "TruncationError", "CertificationError",
]
