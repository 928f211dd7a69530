"""Seeded random rationals.

Everything derives from one integer seed through numpy's SeedSequence and the
Philox counter-based bit generator. Trial k draws from the child stream with
spawn key (k,), so a trial's data does not depend on how many trials ran
before it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

NUM_BOUND = 10**4
DEN_BOUND = 10**3


class RationalStream:
    def __init__(self, seed: int, key: Sequence[int] = ()):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        self.seed = seed
        self.key = tuple(key)
        ss = np.random.SeedSequence(seed, spawn_key=self.key)
        self._gen = np.random.Generator(np.random.Philox(ss))

    def child(self, index: int) -> "RationalStream":
        return RationalStream(self.seed, self.key + (index,))

    def integer(self, lo: int, hi: int) -> int:
        """Uniform on [lo, hi]."""
        return int(self._gen.integers(lo, hi, endpoint=True))

    def rational(self, nonzero: bool = False) -> Fraction:
        while True:
            x = Fraction(self.integer(-NUM_BOUND, NUM_BOUND), self.integer(1, DEN_BOUND))
            if x or not nonzero:
                return x

    def rationals(self, k: int, nonzero: bool = False, distinct: bool = False) -> list[Fraction]:
        out: list[Fraction] = []
        while len(out) < k:
            x = self.rational(nonzero)
            if distinct and x in out:
                continue
            out.append(x)
        return out

    def chart_values(self, n: int, tau) -> list[Fraction]:
        """n distinct nonzero values with tau a != tau^{-1} b for all a != b."""
        tau = Fraction(tau)
        while True:
            vals = self.rationals(n, nonzero=True, distinct=True)
            if all(tau * a != b / tau for i, a in enumerate(vals) for j, b in enumerate(vals) if i != j):
                return vals

    def matrix(self, n: int) -> list[list[Fraction]]:
        return [self.rationals(n) for _ in range(n)]
