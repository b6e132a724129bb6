"""Seeded random rational sampling for "general point" arguments."""

import random
from fractions import Fraction

from ..errors import NonGenericError

BOUND = 10 ** 4
RETRIES = 5


class RationalSampler:
    """Numerators uniform in [-bound, bound], denominators uniform in [1, bound]."""

    def __init__(self, seed=0, bound=BOUND):
        self.seed = seed
        self.bound = bound
        self._rng = random.Random(f"focalkit:{seed}")

    def rat(self):
        b = self.bound
        return Fraction(self._rng.randint(-b, b), self._rng.randint(1, b))

    def nonzero_rat(self):
        while True:
            q = self.rat()
            if q:
                return q

    def vector(self, n):
        return [self.rat() for _ in range(n)]

    def projective_point(self, n):
        while True:
            v = self.vector(n)
            if any(v):
                return v

    def invertible_matrix(self, n):
        from .linalg import rank

        while True:
            m = [self.vector(n) for _ in range(n)]
            if rank(m) == n:
                return m

    def spawn(self, label):
        """Independent, reproducible substream."""
        return RationalSampler(f"{self.seed}/{label}", self.bound)


def with_retries(fn, sampler, attempts=RETRIES):
    """Call fn(sampler) until it stops raising NonGenericError."""
    last = None
    for _ in range(attempts):
        try:
            return fn(sampler)
        except NonGenericError as exc:
            last = exc
    raise NonGenericError(f"non-generic after {attempts} attempts: {last}")
