"""Exception types raised by the CFO engine."""


class CFOError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(CFOError, ValueError):
    """An argument violates the documented input contract."""


class ConfigurationError(CFOError, ValueError):
    """A run or sweep configuration is invalid."""


class GeometryDegeneracyError(CFOError, ArithmeticError):
    """A segment has no usable exit point through the decision-space boundary."""


class ContainmentError(CFOError, AssertionError):
    """A probe was left outside the decision space after retrieval."""


class RunAbortedError(CFOError, RuntimeError):
    """A CFO run produced a non-finite fitness and was stopped."""

    def __init__(self, message, probe, step):
        super().__init__(message)
        self.probe = probe
        self.step = step


class CellError(CFOError, RuntimeError):
    """A sweep cell failed; carries the failing (probes_per_dim, gamma) cell."""

    def __init__(self, message, probes_per_dim, gamma):
        super().__init__(message)
        self.probes_per_dim = probes_per_dim
        self.gamma = gamma
