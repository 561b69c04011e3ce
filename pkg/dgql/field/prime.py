from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator
import random

from sympy import GF, isprime
from sympy.polys.domains.domain import Domain

from .base import BaseField, Scalar


@lru_cache(maxsize=None)
def _prime_domain(p: int) -> Domain:
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class PrimeField(BaseField):
    """Integers modulo a prime ``p``, values kept in ``[0, p)``"""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise ValueError(f"'p' must be a prime number, got {self.p!r}")

    @property
    def domain(self) -> Domain:
        return _prime_domain(self.p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def spec(self) -> str:
        return f"prime {self.p}"

    def format(self, value: Scalar) -> str:
        return str(int(self.domain.to_sympy(value)) % self.p)

    def elements(self) -> Iterator[Scalar]:
        return (self(value) for value in range(self.p))

    def random_nonzero(self, rng: random.Random) -> Scalar:
        return self(rng.randint(1, self.p - 1))
