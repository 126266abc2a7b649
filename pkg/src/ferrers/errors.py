"""Exception types shared across the package."""


class FerrersError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(FerrersError):
    """Malformed graph input: bad header, non-binary entry, empty or duplicated line."""


class DimensionError(FerrersError):
    """A matrix or graph has an impossible shape (zero rows, ragged data, not square)."""


class InvalidPartition(FerrersError):
    """Column heights are not weakly decreasing positive integers."""


class IsolatedVertex(FerrersError):
    """An operation that needs every degree positive met a degree-zero vertex."""


class DisconnectedGraph(FerrersError):
    """An operation defined only for connected graphs received a disconnected one."""


class CapExceeded(FerrersError):
    """An enumeration or brute-force request is larger than the configured cap."""


class NonConvergence(FerrersError):
    """The eigensolver hit its sweep cap before the off-diagonal mass vanished."""


class IdentityViolation(FerrersError):
    """An identity that must hold exactly came out unequal; the message carries both sides."""


class TheoremViolation(FerrersError):
    """A verification campaign found a graph that breaks the tree-count bound."""
