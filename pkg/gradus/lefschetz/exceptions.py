from gradus.exceptions import InvalidInput, VerificationFailed


class ErrorCode:
    NOT_CI = "Generators do not form a complete intersection."
    NOT_FOUND = "No strong Lefschetz element among the candidates."
    INVALID_DEGREES = "Generator degrees must be positive, one per variable."
    NOT_LINEAR = "A Lefschetz element must be a linear form."


class NotCompleteIntersection(VerificationFailed):
    DETAIL = ErrorCode.NOT_CI


class LefschetzElementNotFound(VerificationFailed):
    DETAIL = ErrorCode.NOT_FOUND


class InvalidDegrees(InvalidInput):
    DETAIL = ErrorCode.INVALID_DEGREES


class NotLinear(InvalidInput):
    DETAIL = ErrorCode.NOT_LINEAR
