from dataclasses import dataclass
from typing import Iterator
import random

from sympy import QQ
from sympy.polys.domains.domain import Domain

from .base import BaseField, Scalar


@dataclass(frozen=True)
class RationalField(BaseField):
    """The rationals, numerator and denominator of arbitrary size"""

    @property
    def domain(self) -> Domain:
        return QQ

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def spec(self) -> str:
        return "rational"

    def format(self, value: Scalar) -> str:
        return str(QQ.to_sympy(value))

    def elements(self) -> Iterator[Scalar]:
        raise TypeError("The rational field is infinite")

    def random_nonzero(self, rng: random.Random) -> Scalar:
        numerator = rng.choice([-1, 1]) * rng.randint(1, 9)
        return QQ(numerator, rng.randint(1, 5))
