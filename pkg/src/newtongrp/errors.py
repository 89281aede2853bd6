"""Exception hierarchy.  Every error carries a machine-readable ``code``."""


class AlgebraError(Exception):
    code = "algebra-error"

    def __init__(self, message="", location=None):
        super().__init__(message)
        self.message = message
        self.location = location

    def to_json(self):
        return {"code": self.code, "message": self.message, "location": self.location}


class RingMismatch(AlgebraError):
    code = "ring-mismatch"


class NotAUnit(AlgebraError):
    code = "not-a-unit"


class NotDivisible(AlgebraError):
    code = "not-divisible"


class MissingVariable(AlgebraError):
    code = "missing-variable"


class MixedCarrier(AlgebraError):
    code = "mixed-carrier"


class UnknownVariable(AlgebraError):
    code = "unknown-variable"


class ParseError(AlgebraError):
    code = "syntax-error"


class UnknownIdentifier(ParseError):
    code = "unknown-identifier"


class ResidueIsZero(AlgebraError):
    code = "residue-is-zero"


class InsufficientTruncation(AlgebraError):
    code = "insufficient-truncation"


class WrongResidue(AlgebraError):
    code = "wrong-residue"


class VariableMismatch(AlgebraError):
    code = "variable-mismatch"


class PreconditionViolated(AlgebraError):
    code = "precondition-violated"


class NoSolution(AlgebraError):
    code = "no-solution"


class SearchSpaceTooLarge(AlgebraError):
    code = "search-space-too-large"


class NotOnX(AlgebraError):
    code = "not-on-X"


class OnTheDifferent(AlgebraError):
    code = "on-the-different"


class NotOnDifferent(AlgebraError):
    code = "not-on-different"


class NotInNormalForm(AlgebraError):
    code = "not-in-normal-form"


class EndpointMismatch(AlgebraError):
    code = "endpoint-mismatch"


class InvalidArrow(AlgebraError):
    code = "invalid-arrow"


class ConstraintViolated(AlgebraError):
    code = "constraint-violated"
