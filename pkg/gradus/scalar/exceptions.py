from gradus.exceptions import InvalidInput


class ErrorCode:
    FIELD_MISMATCH = "Operands belong to different fields."
    DIVISION_BY_ZERO = "Division by zero in an exact field."
    NOT_PRIME = "The modulus of a prime field must be a prime number."
    FIELD_NOT_PARSED = "Field must be 'qq' or 'fp:PRIME'."


class FieldMismatch(InvalidInput):
    DETAIL = ErrorCode.FIELD_MISMATCH


class DivisionByZero(InvalidInput, ZeroDivisionError):
    DETAIL = ErrorCode.DIVISION_BY_ZERO


class NotPrime(InvalidInput):
    DETAIL = ErrorCode.NOT_PRIME


class FieldNotParsed(InvalidInput):
    DETAIL = ErrorCode.FIELD_NOT_PARSED
