import os

from .error import ConfigurationError

DEFAULT_TRUNCATION: int = 8

DEFAULT_DEGREES: tuple[int, int] = (-2, 0)

DEFAULT_CY_PARAMETER: int = 2

FINITENESS_BOUND: int = 24

TRUNCATION_ENV: str = "DGQL_TRUNCATE"


def default_truncation() -> int:
    """Truncation order used when a job does not pass one explicitly"""
    raw = os.environ.get(TRUNCATION_ENV)

    if raw is None or raw.strip() == "":
        return DEFAULT_TRUNCATION

    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(
            f"{TRUNCATION_ENV} must be an integer, got {raw!r}"
        ) from None

    if value < 1:
        raise ConfigurationError(f"{TRUNCATION_ENV} must be at least 1")

    return value
