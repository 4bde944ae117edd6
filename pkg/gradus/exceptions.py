from typing import Any


class DetailedError(Exception):
    EXIT_CODE = 1
    DETAIL = "Verification error"

    def __init__(self, detail: str | None = None, **context: Any) -> None:
        self.detail = detail or self.DETAIL
        self.context = context
        super().__init__(self.detail)

    def __str__(self) -> str:
        if not self.context:
            return self.detail
        extra = ", ".join(f"{key}={value}" for key, value in self.context.items())
        return f"{self.detail} ({extra})"


class InvalidInput(DetailedError):
    EXIT_CODE = 2
    DETAIL = "Invalid input"


class VerificationFailed(DetailedError):
    EXIT_CODE = 1
    DETAIL = "Verification failed"
