"""Exception hierarchy shared by every module."""


class FranklForgeError(Exception):
    """Base class for all errors raised by this package."""


class UniverseMismatchError(FranklForgeError, ValueError):
    pass


class DuplicateMemberError(FranklForgeError, ValueError):
    pass


class UnsupportedParameterError(FranklForgeError, ValueError):
    pass


class MalformedPairError(FranklForgeError, ValueError):
    pass


class OracleTooLargeError(FranklForgeError, ValueError):
    pass


class EmptyGroupError(FranklForgeError, ValueError):
    pass


class FormulaDomainError(FranklForgeError, ValueError):
    pass


class NotUnionClosedError(FranklForgeError, ValueError):
    pass


class ClosureLimitExceeded(FranklForgeError, RuntimeError):
    """The closure grew past the configured size guard."""

    def __init__(self, limit: int):
        super().__init__(f"union closure exceeded the size limit of {limit} sets")
        self.limit = limit


class SfParseError(FranklForgeError, ValueError):
    """Malformed S/F text. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
