"""Exception types shared across the package."""

import numpy as np


class PtoscError(Exception):
    """Base class for all package exceptions."""


class ShapeError(PtoscError, ValueError):
    """Matrix/vector dimensions are inconsistent or exceed the supported size."""


class ParameterError(PtoscError, ValueError):
    """Model parameters violate a documented constraint."""


class NumericalError(PtoscError, RuntimeError):
    """A numerical routine failed to reach its accuracy target."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class BrokenPTError(PtoscError, ValueError):
    """PT-broken parameter regime: the spectrum is complex.

    Carries the offending eigenvalues so callers can report them.
    """

    def __init__(self, message: str, eigenvalues=None):
        super().__init__(message)
        self.eigenvalues = None if eigenvalues is None else np.asarray(eigenvalues)


class DegenerateNormError(PtoscError, ValueError):
    """A ket has (numerically) vanishing PT norm and cannot be normalized."""


class DegenerateCombinationError(PtoscError, ValueError):
    """A closed-form eigenvector combination is singular for these parameters.

    Raised e.g. at m2 == 0 where the paired-ket combination has a 1/m2 pole;
    callers should use the Hermitian-limit eigenbasis instead.
    """


class ConstructionError(PtoscError, RuntimeError):
    """An operator construction failed its defining property checks."""
