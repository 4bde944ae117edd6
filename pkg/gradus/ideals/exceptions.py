from gradus.exceptions import InvalidInput


class ErrorCode:
    NO_AMBIENT_RING = "An ideal without generators needs its ring and field."


class NoAmbientRing(InvalidInput):
    DETAIL = ErrorCode.NO_AMBIENT_RING
