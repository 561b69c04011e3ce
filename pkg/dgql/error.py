
from typing_extensions import NotRequired, TypedDict


class ErrorDict(TypedDict):
    error_type: str
    message: str
    line: NotRequired[int]
    arrow: NotRequired[str]


class DGQLError(ValueError):
    """Base of every error raised by dgql"""

    exit_code: int = 3
    error_type: str = "dgql.error"

    def __init__(
        self,
        message: str,
        line: int | None = None,
        arrow: str | None = None,
    ):
        if line is not None:
            message = f"line {line}: {message}"

        super().__init__(message)

        detail: ErrorDict = {
            "error_type": self.error_type,
            "message": message,
        }

        if line is not None:
            detail["line"] = line

        if arrow is not None:
            detail["arrow"] = arrow

        self.detail = detail
        self.message = message
        self.line = line
        self.arrow = arrow


class CompositionError(DGQLError):
    error_type = "dgql.composition"


class IncompatibleError(DGQLError):
    error_type = "dgql.incompatible"


class PreconditionError(DGQLError):
    error_type = "dgql.precondition"


class ParseError(DGQLError):
    exit_code = 2
    error_type = "dgql.parse"


class SemanticError(DGQLError):
    error_type = "dgql.semantic"


class VerificationError(DGQLError):
    exit_code = 1
    error_type = "dgql.verification"


class InternalError(DGQLError):
    exit_code = 1
    error_type = "dgql.internal"


class ConfigurationError(DGQLError):
    exit_code = 2
    error_type = "dgql.configuration"
