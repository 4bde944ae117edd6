from gradus.exceptions import InvalidInput


class ErrorCode:
    DIMENSION_MISMATCH = "Matrix and vector dimensions do not agree."
    DUMP_NOT_PARSED = "Matrix dump could not be parsed."


class DimensionMismatch(InvalidInput):
    DETAIL = ErrorCode.DIMENSION_MISMATCH


class MatrixDumpError(InvalidInput):
    DETAIL = ErrorCode.DUMP_NOT_PARSED
