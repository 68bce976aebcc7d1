"""Exception types shared across cubkit."""


class CubkitError(Exception):
    """Base class for all cubkit errors."""


class InputError(CubkitError, ValueError):
    """Invalid arguments: bad parameters, mismatched sizes, unsupported combinations."""


class NumericalError(CubkitError, ArithmeticError):
    """An internal numerical step failed (eigensolver, root bracketing, ...)."""


class ConstructionError(NumericalError):
    """A cubature rule could not be certified and was not emitted.

    ``diagnostics`` carries whatever the failing step measured (ranks,
    residuals, singular values) so the caller can report it.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class OracleError(NumericalError):
    """The integrand produced a non-finite value inside the reference integrator."""
