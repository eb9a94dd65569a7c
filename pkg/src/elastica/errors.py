"""Exception types shared across the package."""


class ElasticaError(Exception):
    """Base class for all domain errors."""


class DegenerateInput(ElasticaError):
    """Input points admit no closed immersed curve (zero perimeter or collinear)."""


class CuspDetected(ElasticaError):
    """A vertex turning angle reached pi; tan^2(alpha/2) is singular there."""


class NonIntegralTurning(ElasticaError):
    """Total turning is not close to a multiple of 2*pi; the polygon is numerically broken."""


class IndexBroken(ElasticaError):
    """The turning number changed during descent; the polygon degenerated (step too large)."""


class ContradictoryFit(ElasticaError):
    """Curvature profile looks like a circle but the turning number is zero."""


class AmplitudeOutOfRange(ElasticaError):
    """Pendulum amplitude outside the open interval (0, pi)."""


class RootNotBracketed(ElasticaError):
    """The closure functional does not change sign on the search interval."""


class TangencyNotFound(ElasticaError):
    """The tangent-line construction for the lobe deformation failed (epsilon out of range)."""


class CurveFormatError(ElasticaError):
    """A curve file failed to parse; the message names the offending field."""
