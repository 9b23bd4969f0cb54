"""Exception hierarchy shared by the library and the CLI."""


class PeriodicSumError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(PeriodicSumError, ValueError):
    pass


class DomainError(PeriodicSumError, ValueError):
    """Argument hits a pole or lies outside the documented domain."""


class UnsupportedFamilyError(PeriodicSumError):
    """A sequence family lacks the anti-difference an operation needs."""


class InconsistencyError(PeriodicSumError, ArithmeticError):
    """Two evaluation routes of the same identity disagree."""


class ExpressionError(PeriodicSumError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class LexError(ExpressionError):
    pass


class ParseError(ExpressionError):
    pass


class UnknownFunctionError(ExpressionError):
    pass


class EvaluationError(ExpressionError):
    pass


class NotPeriodicError(ExpressionError):
    pass
