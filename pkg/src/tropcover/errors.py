"""Exception hierarchy shared across the package."""


class TropcoverError(Exception):
    """Base class for all library errors."""


class MalformedGraphError(TropcoverError):
    """The graph data itself is unusable (duplicate ids, bad lengths, ...)."""


class PointError(TropcoverError):
    """A point does not lie on the host graph."""


class DegreeError(TropcoverError):
    """A divisor has the wrong degree for the requested operation."""


class SlopeError(TropcoverError):
    """A piecewise linear function has a non-integer slope."""


class CycleError(TropcoverError):
    """An edge set is not an even subgraph."""


class CoverError(TropcoverError):
    """A double cover is inconsistent or fails a precondition."""


class AugmentedGraphError(TropcoverError):
    """An operation requires an unaugmented graph (zero genus function)."""


class PrymError(TropcoverError):
    """A divisor is outside the kernel of the pushforward on Jacobians."""
