"""Exception types shared across the package."""


class ScanCoverError(Exception):
    """Base class for all scancover errors."""


class InstanceFormatError(ScanCoverError):
    """Instance document is malformed or violates a structural invariant."""


class ScheduleFormatError(ScanCoverError):
    """Schedule document is malformed or does not match the instance."""


class NotIncident(ScanCoverError):
    """Two edges do not share exactly one vertex."""


class DegenerateEdge(ScanCoverError):
    """An edge joins two vertices at identical coordinates."""


class IncompleteOrder(ScanCoverError):
    """An edge order misses or repeats edges of the instance."""


class InfeasibleSchedule(ScanCoverError):
    """A schedule cannot be realized by unit-speed rotations."""


class InvalidTrajectory(ScanCoverError):
    """A trajectory fails validation where a valid one is required."""


class NotBipartite(ScanCoverError):
    """The underlying graph is not bipartite."""


class NotBipartitePartition(ScanCoverError):
    """A supplied vertex partition is not a proper 2-coloring."""


class NotComplete(ScanCoverError):
    """The underlying graph is not complete."""


class NotAStar(ScanCoverError):
    """The underlying graph is not a star."""


class NotATree(ScanCoverError):
    """The underlying graph is not a tree."""


class ImproperColoring(ScanCoverError):
    """A supplied coloring assigns the same color to adjacent vertices."""


class CoverViolation(ScanCoverError):
    """A bit schedule leaves some edge without a valid scan step."""


class TooLarge(ScanCoverError):
    """Input exceeds the configured size cap of an exact solver."""


class TooManyVariables(ScanCoverError):
    """Formula exceeds the brute-force variable cap."""


class CostsNotDiscrete(ScanCoverError):
    """Pairwise costs are not multiples of the requested step."""


class NoSolutionWithin(ScanCoverError):
    """No discrete schedule exists within the step budget."""


class MalformedFormula(ScanCoverError):
    """A clause list is not well-formed 3-literal NAE input."""


class DimensionMismatch(ScanCoverError):
    """Requested geometry does not fit the requested dimension."""
