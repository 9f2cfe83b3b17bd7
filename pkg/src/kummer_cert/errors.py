"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map
it to an exit status without string matching.
"""


class KummerError(Exception):
    code = "Error"


class ValidationError(KummerError, ValueError):
    """Input data that fails a structural precondition."""

    code = "ValidationError"


class NotPrime(ValidationError):
    code = "NotPrime"


class CharTooSmall(ValidationError):
    code = "CharTooSmall"


class DegreeZero(ValidationError):
    code = "DegreeZero"


class NotADivisor(ValidationError):
    code = "NotADivisor"


class BadDegree(ValidationError):
    code = "BadDegree"


class NotMonic(ValidationError):
    code = "NotMonic"


class NotSquarefree(ValidationError):
    code = "NotSquarefree"


class FieldMismatch(ValidationError):
    code = "FieldMismatch"


class BaseFieldMismatch(ValidationError):
    code = "BaseFieldMismatch"


class FieldTooSmall(ValidationError):
    code = "FieldTooSmall"


class PointNotOnCurve(ValidationError):
    code = "PointNotOnCurve"


class InvalidDivisor(ValidationError):
    code = "InvalidDivisor"


class BadN(ValidationError):
    code = "BadN"


class ParseError(ValidationError):
    code = "ParseError"

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class DivisionByZeroPoly(KummerError, ZeroDivisionError):
    code = "DivisionByZeroPoly"


class BothZero(KummerError, ValueError):
    code = "BothZero"


class ZeroPolynomial(KummerError, ValueError):
    code = "ZeroPolynomial"


class ConstantPolynomial(KummerError, ValueError):
    code = "ConstantPolynomial"


class BudgetExceeded(KummerError):
    code = "BudgetExceeded"


class InconsistentCounts(KummerError):
    code = "InconsistentCounts"


class OrderViolation(KummerError):
    code = "OrderViolation"


class NotFound(KummerError):
    """Exhaustive search ended without a witness."""

    code = "NotFound"


class ExceptionalPoint(KummerError):
    code = "ExceptionalPoint"
