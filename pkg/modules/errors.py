"""Exceptions and warnings raised by the nodal-domain toolkit."""

from typing import Optional


class NodalToolkitError(Exception):
    """Base class for every diagnostic the toolkit raises."""


class ChartMismatchError(NodalToolkitError):
    """A base point was given in a chart the field does not expect."""


class SingularFiberError(NodalToolkitError):
    """The base value vanishes, so the real part vanishes on the whole fiber."""


class PrecisionError(NodalToolkitError):
    """A truncated q-expansion cannot meet the requested tail tolerance.

    :ivar required_n: Truncation order that would meet the tolerance, if known.
    """

    def __init__(self, message: str, required_n: Optional[int] = None) -> None:
        super().__init__(message)
        self.required_n = required_n


class ConfigurationError(NodalToolkitError):
    """A grid resolution or parameter set is incompatible with a gluing."""


class QuadratureError(NodalToolkitError):
    """The quadrature grid is too coarse to integrate exactly."""


class RadiusError(NodalToolkitError):
    """The field is too small on the winding circle."""


class SamplingError(NodalToolkitError):
    """Accumulated winding is not close to an integer."""


class DegenerateFieldError(NodalToolkitError):
    """A partition-generating function vanishes on the whole disc."""


class NonGenericPairError(NodalToolkitError):
    """The common zero set of a partition pair contains a closed curve."""


class AccuracyWarning(UserWarning):
    """A finite-difference step is too coarse for the advertised accuracy."""
