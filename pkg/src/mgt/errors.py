"""Exception hierarchy shared by all mgt modules."""


class MgtError(Exception):
    """Base class for all library errors."""


class InputError(MgtError):
    """Malformed graph file or other unparseable input."""


class DisconnectedGraph(MgtError):
    pass


class NonPositiveLength(MgtError):
    pass


class BadVertexId(MgtError):
    pass


class NonPositiveScale(MgtError):
    pass


class BadPoint(MgtError):
    pass


class BadM(MgtError):
    pass


class BadN(MgtError):
    pass


class PatternMismatch(MgtError):
    pass


class TerminalElimination(MgtError):
    pass


class ReductionStuck(MgtError):
    """Internal invariant violation: a non-terminal node could not be eliminated."""


class NonPolynomialIntegrand(MgtError):
    """A guard sample did not match the fitted polynomial."""


class SamePoint(MgtError):
    pass


class BridgeDeletion(MgtError):
    pass


class HasBridge(MgtError):
    pass


class NotBridgeless(MgtError):
    pass


class NotNormalized(MgtError):
    pass


class InfArithmeticError(MgtError):
    """An infinity combination outside the supported limit forms."""
