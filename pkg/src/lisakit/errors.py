"""Exception types raised by the lisakit library."""


class LisaError(Exception):
    """Base class for all lisakit errors."""


class TooFewValues(LisaError):
    """Fewer observations than the operation requires."""


class ZeroVariance(LisaError):
    """All values equal; a spread-based computation is undefined."""


class NegativeWeight(LisaError):
    """A raw spatial weight is negative."""


class LengthMismatch(LisaError):
    """Value vector length disagrees with the weight matrix size."""


class IsolatedRegion(LisaError):
    """The region has no neighbors, so the requested quantity is undefined."""


class EmptyDistribution(LisaError):
    """An empty permutation distribution was supplied."""


class BadAlpha(LisaError):
    """Significance level outside (0, 0.5) or incompatible with the
    permutation count."""


class BadBandwidth(LisaError):
    """Kernel bandwidth is not a positive finite number."""


class IdMismatch(LisaError):
    """Attribute ids do not line up one-to-one with weight matrix rows."""


class UnknownId(LisaError):
    """No analyzed region carries the requested id."""


class MissingId(LisaError):
    """A geometry feature lacks the configured id property."""


class UnsupportedGeometry(LisaError):
    """Feature geometry is not a Polygon or MultiPolygon."""


class MalformedDocument(LisaError):
    """The geometry document cannot be interpreted."""


class DegenerateGeometry(LisaError):
    """Geometry with zero total area or coincident centroids."""


class CoincidentPoints(LisaError):
    """Bearing requested between two identical points."""
