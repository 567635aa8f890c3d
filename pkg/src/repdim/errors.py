"""Exception hierarchy shared by all modules."""


class RepdimError(Exception):
    """Base class for every error raised by this package."""


class ShapeMismatch(RepdimError, ValueError):
    pass


class AdmissibilityViolated(RepdimError):
    pass


class InvalidRelation(RepdimError):
    pass


class UnknownArrow(RepdimError):
    pass


class RelationViolated(RepdimError):
    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class CharacteristicTooSmall(RepdimError):
    pass


class AlgebraMismatch(RepdimError, ValueError):
    pass


class DecompositionFailed(RepdimError):
    pass


class NotStringAlgebra(RepdimError):
    pass


class NotSerialType(RepdimError):
    pass


class SocleNotTwoSidedIdeal(RepdimError):
    pass


class UnsupportedReduction(RepdimError):
    pass


class NotApplicable(RepdimError):
    pass


class DatumInvalid(RepdimError):
    pass


class VerificationFailed(RepdimError):
    pass


class SummandNotInAddM(RepdimError):
    pass


class CapExceeded(RepdimError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotQuasiHereditaryForOrder(RepdimError):
    def __init__(self, message, stage=None, condition=None):
        super().__init__(message)
        self.stage = stage
        self.condition = condition


class ParseError(RepdimError):
    """Input file error carrying a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class QuivSyntaxError(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


class DuplicateLabel(ParseError):
    pass
