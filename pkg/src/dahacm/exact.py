"""Exact rational scalars and first-order jets.

Scalars are :class:`fractions.Fraction`; nothing in the package touches floats.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RationalScalar = Fraction


class ExactDivisionError(ZeroDivisionError):
    """Division by an exact zero; the message names the offending operation."""


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rat_arith(a, b, op: str) -> Fraction:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    a, b = rat(a), rat(b)
    if op == "div" and b == 0:
        raise ExactDivisionError(f"division by zero in rat_arith({a}, {b}, 'div')")
    return fn(a, b)


def format_rational(x: Fraction) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s or any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational string: {s!r}")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational string: {s!r}") from None
    if q == 0:
        raise ExactDivisionError(f"zero denominator in {s!r}")
    return Fraction(p, q)


@dataclass(frozen=True)
class Jet:
    """A value together with its exact gradient over a fixed variable set."""

    value: Fraction
    partials: tuple[Fraction, ...]

    @classmethod
    def constant(cls, value, nvars: int) -> "Jet":
        return cls(rat(value), (Fraction(0),) * nvars)

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            if len(other.partials) != len(self.partials):
                raise ValueError(
                    f"jet length mismatch: {len(self.partials)} vs {len(other.partials)}"
                )
            return other
        return Jet.constant(other, len(self.partials))

    def __add__(self, other):
        o = self._lift(other)
        return Jet(self.value + o.value, tuple(map(operator.add, self.partials, o.partials)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, tuple(-d for d in self.partials))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        a, b = self.value, o.value
        return Jet(a * b, tuple(da * b + a * db for da, db in zip(self.partials, o.partials)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.value == 0:
            raise ExactDivisionError("jet division by a jet with zero value")
        a, b = self.value, o.value
        b2 = b * b
        return Jet(a / b, tuple((da * b - a * db) / b2 for da, db in zip(self.partials, o.partials)))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return 1 / (self ** (-k))
        out = Jet.constant(1, len(self.partials))
        for _ in range(k):
            out = out * self
        return out

    def partial(self, index: int) -> Fraction:
        return self.partials[index]


def jet_var(point: Sequence, index: int) -> Jet:
    if not 0 <= index < len(point):
        raise IndexError(f"variable index {index} out of range for {len(point)} variables")
    seed = [Fraction(0)] * len(point)
    seed[index] = Fraction(1)
    return Jet(rat(point[index]), tuple(seed))


def jet_vars(point: Sequence) -> list[Jet]:
    return [jet_var(point, i) for i in range(len(point))]


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


def prod(items: Iterable, start=1):
    out = start
    for x in items:
        out = out * x
    return out
