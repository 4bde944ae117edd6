from gradus.exceptions import InvalidInput


class ErrorCode:
    UNKNOWN_REPORT_FIELD = "Report contains fields this schema does not know."
    SCHEMA_VERSION = "Report was written with another schema version."
    REPORT_NOT_PARSED = "Report is not valid JSON."


class UnknownReportField(InvalidInput):
    DETAIL = ErrorCode.UNKNOWN_REPORT_FIELD


class SchemaVersionMismatch(InvalidInput):
    DETAIL = ErrorCode.SCHEMA_VERSION


class ReportNotParsed(InvalidInput):
    DETAIL = ErrorCode.REPORT_NOT_PARSED
