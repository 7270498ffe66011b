"""Exception types shared across the lab."""


class PathlabError(Exception):
    """Base class for all pathlab errors."""


class DomainError(PathlabError, ValueError):
    """A point lies outside the domain an evaluator is defined on."""


class UnknownEntryError(PathlabError, KeyError):
    """Lookup of a catalog entry, curve, or case id that does not exist."""


class PreconditionError(PathlabError, ValueError):
    """An operation's stated precondition is violated (e.g. vanishing derivative)."""


class NumericError(PathlabError, RuntimeError):
    """A numeric routine failed to converge or produced non-finite output."""


class GeometryError(PathlabError, RuntimeError):
    """Root bracketing or point matching on a curve failed geometrically."""


class TracesDifferError(GeometryError):
    """Two curves fed to the reparametrization solver do not share a trace,
    or the pair is rejected (closed curve, injectivity failure, coverage gap)."""
