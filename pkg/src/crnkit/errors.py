"""Exception hierarchy shared across the toolkit."""


class CRNError(Exception):
    """Base class for all toolkit errors."""


class InvalidNetwork(CRNError, ValueError):
    """A network violates the structural axioms (self-loops, unused complexes, ...)."""


class PreconditionFailure(CRNError):
    """An operation was called on an input outside its domain."""


class NotRDK(PreconditionFailure):
    """A reactant complex carries two different kinetic-order rows."""


class SpeciesMismatch(PreconditionFailure):
    """Two systems do not live on the same species space."""


class NotAPartition(PreconditionFailure):
    """A proposed decomposition does not partition the reaction set."""


class TooLarge(PreconditionFailure):
    """An exhaustive procedure would exceed its enumeration bound."""


class SingularChoice(PreconditionFailure):
    """No choice of replaced rows gives a non-vanishing determinant."""


class PremiseFailure(PreconditionFailure):
    """A theorem's premise could not be verified."""

    def __init__(self, premise: str, detail: str = ""):
        self.premise = premise
        msg = premise if not detail else f"{premise}: {detail}"
        super().__init__(msg)


class DimensionMismatch(PreconditionFailure):
    """Subspace dimensions differ from what an operation requires."""


class UnknownModel(CRNError, KeyError):
    """No built-in model has the requested name."""


class NumericFailure(CRNError, ArithmeticError):
    """Base class for numerical non-convergence."""


class NonPositiveState(PreconditionFailure):
    """A state vector has a component that is not strictly positive."""


class NoBracket(NumericFailure):
    """A sign change could not be bracketed."""


class NoEquilibriumFound(NumericFailure):
    """A scan failed to locate an equilibrium."""


class NoConvergence(NumericFailure):
    """An iterative method hit its iteration cap."""


class NotAnEquilibrium(PreconditionFailure):
    """The supplied state does not satisfy f(x) = 0 to the requested tolerance."""


class InfeasibleClass(PreconditionFailure):
    """The requested conservation class contains no positive equilibrium."""


class ParseError(CRNError, ValueError):
    """Malformed ``.crn`` text."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class DuplicateSpecies(ParseError):
    pass


class UndeclaredSpecies(ParseError):
    pass


class NonPositiveRate(ParseError):
    pass
