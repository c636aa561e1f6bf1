"""Exception and warning types raised by kerrcat."""

import numpy as np


class CutoffError(IndexError):
    """A Fock index lies at or beyond the cutoff."""


class DimensionError(ValueError):
    """Operands live in spaces of different dimension or mode count."""


class ConsistencyError(ArithmeticError):
    """An internal bookkeeping check failed (e.g. complex residue in a norm)."""


class ZeroNormError(ValueError):
    """The state has zero norm and cannot be decomposed."""


class ConditioningError(np.linalg.LinAlgError):
    """The coherent-state Gram matrix is too ill-conditioned to use.

    The condition number at failure is kept on ``condition_number``.
    """

    def __init__(self, message, condition_number):
        super().__init__(f"{message} (condition number {condition_number:.3e})")
        self.condition_number = condition_number


class BracketError(RuntimeError):
    """A bisection search could not bracket its target."""

    def __init__(self, message, lower, upper):
        super().__init__(f"{message} (bracket [{lower:g}, {upper:g}])")
        self.lower = lower
        self.upper = upper


class TruncationWarning(UserWarning):
    """A Fock cutoff excludes more coherent-state mass than the target tolerance."""
