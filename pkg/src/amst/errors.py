"""Exception hierarchy shared by every module."""


class AmstError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(AmstError, ValueError):
    """An index, label or shape argument is out of range or inconsistent."""


class CapacityError(AmstError):
    """A structure exceeds the size caps that keep exhaustive checks feasible."""


class PreconditionError(AmstError):
    """An operation was called on an input that violates its stated precondition."""


class EmptinessError(PreconditionError):
    """A construction would produce an amst with no models."""


class SubbaseError(AmstError):
    """A family does not cover the ground set."""


class BaseAxiomError(AmstError):
    """A family violates the base intersection axiom.

    ``witness`` holds the offending ``(U, V)`` pair of bitmasks.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TauNError(PreconditionError):
    """tau_N requested on an amst that is not normal or whose L is satisfiable."""


class TauCError(PreconditionError):
    """tau_C requested on a non-normal amst."""


class FilterError(AmstError):
    """A family lacks the finite intersection property, or a filter is improper."""


class InvariantError(AmstError):
    """Two independent computations that must agree did not."""


class AxiomViolation(AmstError):
    """A structure fails one of its defining axioms.

    ``label`` names the axiom (e.g. ``"d"`` or ``"b_P"``) and ``witness``
    carries the offending data.
    """

    def __init__(self, label, witness=None, message=None):
        super().__init__(message or f"axiom {label} violated: {witness!r}")
        self.label = label
        self.witness = witness


class ParseError(AmstError):
    """Formula text could not be parsed; ``offset`` is the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class EvaluationError(AmstError, KeyError):
    """A formula mentions a variable the assignment does not declare."""
