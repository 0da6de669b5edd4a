"""
    Exceptions raised throughout emigdsw
"""


class EmiGdswError(Exception):
    """
        Base class of every error raised by emigdsw
    """


class ConfigError(EmiGdswError, ValueError):
    """
        A run config file, a config value or a command line option is invalid
    """


class MeshError(EmiGdswError, ValueError):
    """
        The geometry config is invalid or two interface nodes do not match
    """


class AssemblyError(EmiGdswError, ValueError):
    """
        An operator or right-hand side was requested with inconsistent inputs
    """


class SingularSystemError(AssemblyError):
    """
        The composite operator has no Dirichlet set and no zero-mean handling
    """


class NotPositiveDefiniteError(EmiGdswError, ArithmeticError):
    """
        A factorization met a non-positive pivot

        Properties:
            pivot - The index of the offending pivot (None when unknown)
    """

    def __init__(self, message: str, pivot: int = None):
        super().__init__(message)
        self.pivot = pivot


class CoarseSpaceError(NotPositiveDefiniteError):
    """
        The coarse operator is rank deficient. The pivot is the offending
        coarse column.
    """


class BreakdownError(EmiGdswError, ArithmeticError):
    """
        The conjugate gradient recursion met a non-positive curvature p'Ap
    """


class ConvergenceError(EmiGdswError, RuntimeError):
    """
        The linear solve of a time step did not reach the tolerance

        Properties:
            step     - The index of the failing time step
            residuals - The relative residual history of the failing solve
    """

    def __init__(self, message: str, step: int, residuals):
        super().__init__(message)
        self.step = step
        self.residuals = list(residuals)


class IonicError(EmiGdswError, ArithmeticError):
    """
        The membrane model produced a non-finite state
    """


class PlotError(EmiGdswError, ValueError):
    """
        A table handed to the plot writer misses required columns
    """
