"""
Exception hierarchy for the vibronic simulator.
"""


class VibronicError(Exception):
    """Base class for all simulator errors."""


class InvalidState(VibronicError, ValueError):
    """Raised when a Gaussian state is malformed or unphysical."""


class InvalidParameter(VibronicError, ValueError):
    """Raised for bad inputs: dimensions, indices, non-unitary matrices."""


class NumericalError(VibronicError, ArithmeticError):
    """Raised when a computation breaks down numerically."""


class CutoffError(NumericalError):
    """Raised when a conditional normalizer vanishes during sampling.

    Parameters
    ----------
    prefix : tuple
        Photon counts already drawn for the preceding modes
    normalizer : float
        Total probability mass found below the cutoff
    """

    def __init__(self, prefix, normalizer, message=None):
        self.prefix = tuple(int(n) for n in prefix)
        self.normalizer = float(normalizer)
        super().__init__(
            message
            or (
                f"conditional normalizer {self.normalizer:.3e} below threshold "
                f"after prefix {self.prefix}; increase the cutoff"
            )
        )
