"""The Lyness map F_a(x, y) = (y, (a + y)/x) iterated in exact arithmetic."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from lyness.exactnum import RationalLike, as_rational, max_bits

DEFAULT_MAX_BITS = 1_000_000
ALLOWED_PERIODS = frozenset({1, 2, 3, 5, 6, 7, 8, 9, 10, 12})


class ForbiddenSet(ArithmeticError):
    """An iterate would divide by zero."""


class NotOnAffineChart(ArithmeticError):
    """The invariant is undefined where x*y = 0."""


class CoordinateGrowth(ArithmeticError):
    """Orbit coordinates exceeded the configured bit bound."""


class PlanePoint(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "PlanePoint":
        return cls(as_rational(x), as_rational(y))


def step(a: RationalLike, p: tuple) -> PlanePoint:
    a = as_rational(a)
    x, y = p
    if x == 0:
        raise ForbiddenSet(f"x = 0 at {p}")
    return PlanePoint(Fraction(y), (a + y) / x)


def step_back(a: RationalLike, p: tuple) -> PlanePoint:
    a = as_rational(a)
    x, y = p
    if y == 0:
        raise ForbiddenSet(f"y = 0 at {p}")
    return PlanePoint((a + x) / y, Fraction(x))


def invariant_h(a: RationalLike, p: tuple) -> Fraction:
    """Level h of the cubic (x+1)(y+1)(x+y+a) = h*x*y through `p`."""
    a = as_rational(a)
    x, y = map(Fraction, p)
    if x * y == 0:
        raise NotOnAffineChart(f"x*y = 0 at {p}")
    return (x + 1) * (y + 1) * (x + y + a) / (x * y)


def iterate(a: RationalLike, seed: tuple, steps: int) -> list[PlanePoint]:
    """Return the seed followed by `steps` iterates; raises ForbiddenSet."""
    a = as_rational(a)
    pts = [PlanePoint.of(*seed)]
    for _ in range(steps):
        pts.append(step(a, pts[-1]))
    return pts


def sequence(a: RationalLike, x0: RationalLike, x1: RationalLike, n: int) -> list[Fraction]:
    """First `n` terms x_0, x_1, ... of the recurrence; stops at the forbidden set."""
    a = as_rational(a)
    xs = [as_rational(x0), as_rational(x1)][:n]
    while len(xs) < n:
        if xs[-2] == 0:
            break
        xs.append((a + xs[-1]) / xs[-2])
    return xs


def _bits_bound() -> int:
    return int(os.environ.get("LYNESS_MAX_BITS", DEFAULT_MAX_BITS))


@dataclass
class PeriodReport:
    """Outcome of period detection.

    ``status`` is one of ``"periodic"``, ``"aperiodic"`` or ``"forbidden"``.
    For a periodic seed ``orbit`` holds exactly one period starting at the
    seed; otherwise it holds every point visited.
    """

    status: str
    period: int | None = None
    steps: int = 0
    forbidden_step: int | None = None
    orbit: list[PlanePoint] = field(default_factory=list)

    @property
    def is_periodic(self) -> bool:
        return self.status == "periodic"


def detect_period(
    a: RationalLike,
    seed: tuple,
    max_steps: int = 100,
    max_bits: int | None = None,
) -> PeriodReport:
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    a = as_rational(a)
    bound = _bits_bound() if max_bits is None else max_bits
    start = PlanePoint.of(*seed)
    orbit = [start]
    p = start
    for n in range(1, max_steps + 1):
        if p.x == 0:
            return PeriodReport("forbidden", steps=n - 1, forbidden_step=n - 1, orbit=orbit)
        p = step(a, p)
        if p == start:
            return PeriodReport("periodic", period=n, steps=n, orbit=orbit)
        if max_bits_exceeded(p, bound):
            raise CoordinateGrowth(f"coordinates exceed {bound} bits after {n} steps")
        orbit.append(p)
    return PeriodReport("aperiodic", steps=max_steps, orbit=orbit)


def max_bits_exceeded(p: PlanePoint, bound: int) -> bool:
    return max_bits(p.x, p.y) > bound
