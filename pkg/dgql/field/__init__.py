from .base import BaseField, Scalar
from .prime import PrimeField
from .rational import RationalField

__all__ = ["BaseField", "PrimeField", "RationalField", "Scalar", "field_from_spec"]


def field_from_spec(spec: str) -> BaseField:
    """Build a field from ``rational`` or ``prime <p>``"""
    tokens = spec.split()

    if tokens == ["rational"]:
        return RationalField()

    if len(tokens) == 2 and tokens[0] == "prime":
        return PrimeField(int(tokens[1]))

    raise ValueError(f"Unknown field specification {spec!r}")
