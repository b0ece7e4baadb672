"""Exception hierarchy shared by all modules."""


class HybridQuditError(Exception):
    """Base class for every error raised by :mod:`hybridqudit`."""


class DimensionError(HybridQuditError, ValueError):
    """A site dimension is not an integer >= 2."""


class DimensionTooLargeError(HybridQuditError, ValueError):
    """A register or operator exceeds the configured dense-size bound."""


class ShapeError(HybridQuditError, ValueError):
    """Operand shapes are incompatible."""


class PlacementError(HybridQuditError, ValueError):
    """A site placement repeats or leaves the register."""


class RangeError(HybridQuditError, ValueError):
    """An integer argument (digit, exponent, cutoff) is out of range."""


class PartitionError(HybridQuditError, ValueError):
    """A bipartition does not split the register into two non-empty halves."""


class ValidationError(HybridQuditError, ValueError):
    """An operator fails a structural check, e.g. unitarity."""


class UnsupportedConfigurationError(HybridQuditError, ValueError):
    """The construction is only defined for a narrower set of dimensions."""


class NumericalFailure(HybridQuditError, ArithmeticError):
    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations
