from gradus.exceptions import InvalidInput


class ErrorCode:
    RING_MISMATCH = "Polynomials belong to different rings or fields."
    NOT_HOMOGENEOUS = "Polynomial is not bihomogeneous."
    CHARACTERISTIC_TOO_SMALL = "Field characteristic does not exceed an exponent."
    INVALID_TYPE = "Type must be four nonnegative integers of the same parity."
    PARSE_ERROR = "Polynomial text could not be parsed."
    UNKNOWN_VARIABLE = "Unknown variable for this ring."


class RingMismatch(InvalidInput):
    DETAIL = ErrorCode.RING_MISMATCH


class NotHomogeneous(InvalidInput):
    DETAIL = ErrorCode.NOT_HOMOGENEOUS


class CharacteristicTooSmall(InvalidInput):
    DETAIL = ErrorCode.CHARACTERISTIC_TOO_SMALL


class InvalidType(InvalidInput):
    DETAIL = ErrorCode.INVALID_TYPE


class PolynomialParseError(InvalidInput):
    DETAIL = ErrorCode.PARSE_ERROR


class UnknownVariable(PolynomialParseError):
    DETAIL = ErrorCode.UNKNOWN_VARIABLE
