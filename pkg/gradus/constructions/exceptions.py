from gradus.exceptions import InvalidInput, VerificationFailed


class ErrorCode:
    NEITHER_SIGN = "Neither sign satisfies the determinant congruence."
    STEP_FAILURE = "A step of the construction could not be certified."
    DEGREE_TOO_SMALL = "The classical argument needs degree at least 4."
    INVALID_STEP = "Unknown step, variant or dropped component."


class NeitherSign(VerificationFailed):
    DETAIL = ErrorCode.NEITHER_SIGN


class StepFailure(VerificationFailed):
    DETAIL = ErrorCode.STEP_FAILURE


class DegreeTooSmall(InvalidInput):
    DETAIL = ErrorCode.DEGREE_TOO_SMALL


class InvalidStep(InvalidInput):
    DETAIL = ErrorCode.INVALID_STEP
