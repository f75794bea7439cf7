"""Exception types shared across the library.

Every error raised on purpose derives from :class:`TropinvError`, so callers
(and the CLI) can map failures to exit codes without matching on messages.
"""


class TropinvError(Exception):
    """Base class for all library errors."""


class ParseError(TropinvError):
    """Malformed textual input: JSON schema, rational literal, point syntax."""


class DisconnectedGraph(TropinvError):
    """The graph (or a required subgraph) is not connected."""


class NonPositiveLength(TropinvError):
    """An edge length is zero or negative."""


class GenusZero(TropinvError):
    """An operation that needs genus h >= 1 was called on a genus-0 graph."""


class OffsetOutOfRange(TropinvError):
    """An edge offset lies outside the allowed interval."""


class UnknownPoint(TropinvError):
    """A vertex or edge id does not exist in the graph."""


class ProfileSampleMismatch(TropinvError):
    """An exact interpolation certificate failed; signals an implementation bug."""


class CrosscheckFailure(TropinvError):
    """Two independent computation paths disagreed; signals an implementation bug."""


class InconsistentCounts(TropinvError):
    """Node-type counts violate their defining linear relation."""


class GenusMismatch(TropinvError):
    """Counts and graph disagree on the genus."""


class LengthMismatch(TropinvError):
    """Counts and graph disagree on the total length."""


class ArityMismatch(TropinvError):
    """Wrong number of edge lengths for a catalog graph type."""


class RankDeficient(TropinvError):
    """The recovery kernel is not one-dimensional; carries the candidate basis."""

    def __init__(self, message, basis=None):
        super().__init__(message)
        self.basis = basis if basis is not None else []


class ValidationFailure(TropinvError):
    """A fitted function failed exact validation on held-out samples."""


class DenominatorZero(TropinvError):
    """A rational function was evaluated at a zero of its denominator."""
