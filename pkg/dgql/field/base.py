from abc import ABC, abstractmethod
from typing import Any, Iterator
import random
import re

from sympy.polys.domains.domain import Domain

Scalar = Any
"""Element of a sympy ground domain (``QQ`` or ``GF(p)``)"""

_LITERAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class BaseField(ABC):
    """Exact field of scalars backed by a sympy domain"""

    @property
    @abstractmethod
    def domain(self) -> Domain: ...

    @property
    @abstractmethod
    def characteristic(self) -> int: ...

    @property
    @abstractmethod
    def spec(self) -> str:
        """Text form accepted by the ``field`` input line"""
        ...

    @abstractmethod
    def format(self, value: Scalar) -> str: ...

    @abstractmethod
    def elements(self) -> Iterator[Scalar]:
        """All elements, for finite fields only"""
        ...

    @abstractmethod
    def random_nonzero(self, rng: random.Random) -> Scalar: ...

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def __call__(self, value: int) -> Scalar:
        return self.domain(value)

    def is_zero(self, value: Scalar) -> bool:
        return not value

    def sign(self, exponent: int) -> Scalar:
        """(-1) ** exponent as a field element"""
        return self.one if exponent % 2 == 0 else -self.one

    def parse(self, text: str) -> Scalar:
        match = _LITERAL.match(text.strip())

        if match is None:
            raise ValueError(f"Malformed coefficient {text!r}")

        numerator = self(int(match.group(1)))

        if match.group(2) is None:
            return numerator

        denominator = self(int(match.group(2)))
        if self.is_zero(denominator):
            raise ZeroDivisionError(
                f"Coefficient {text!r} has a denominator vanishing in {self.spec}"
            )

        return numerator / denominator
