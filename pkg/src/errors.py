"""
Exception hierarchy.

InvalidInput covers everything a user can get wrong (exit code 2);
InvariantViolation means an internal cross-check failed (exit code 3).
"""


class KStateError(Exception):
    """Base class for all toolkit errors."""


class InvalidInput(KStateError, ValueError):
    """Rejected diagram, state, graph or file."""


class InvariantViolation(KStateError, AssertionError):
    """An internal consistency check failed."""


# diagram
class PDSyntaxError(InvalidInput):
    pass


class EmptyDiagram(InvalidInput):
    pass


class BadLabels(InvalidInput):
    pass


class NonPlanar(InvalidInput):
    pass


class OrientationConflict(InvalidInput):
    pass


class SplitDiagram(InvalidInput):
    pass


# state
class LengthMismatch(InvalidInput):
    pass


class BadCharacter(InvalidInput):
    pass


# graphs
class Disconnected(InvalidInput):
    pass


class NotAdjacent(InvalidInput):
    pass


class NotDecomposing(InvalidInput):
    pass


class NotBipartite(InvalidInput):
    pass


class MixedLabels(InvalidInput):
    pass


class CutVertex(InvalidInput):
    def __init__(self, vertex, message=None):
        self.vertex = vertex
        super().__init__(
            message
            or f"vertex {vertex} is a cut vertex; decompose into Murasugi summands first"
        )


class NotCheckerboard(InvalidInput):
    pass


class NotSquare(InvalidInput):
    pass


# alexander
class NotAKnot(InvalidInput):
    pass


class NotAlternatingDiagram(InvalidInput):
    pass


class NotReduced(InvalidInput):
    pass


class PolynomialFormatError(InvalidInput):
    pass


# census and corpus
class BoundExceeded(InvalidInput):
    pass


class CorpusError(InvalidInput):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
