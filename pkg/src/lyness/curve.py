"""Projective Lyness cubics and their chord-tangent group law.

The level set C_{a,h} : (x+z)(y+z)(x+y+az) - h*x*y*z = 0 is a group with
neutral element O = [1:-1:0]; one step of the Lyness map is translation by
Q = [1:0:0].  Everything here works on canonical integer triples, so points
at infinity need no special handling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from lyness.exactnum import RationalLike, as_rational, parse_rational


class CurveError(ArithmeticError):
    pass


class NotOnCurve(CurveError):
    pass


class SingularCurve(CurveError):
    pass


class ZeroGradient(CurveError):
    pass


class BasePoint(CurveError):
    """The projective Lyness map is undefined at this point."""


class FormulaPole(CurveError):
    pass


class InfiniteOrPastCap(CurveError):
    pass


@dataclass(frozen=True)
class ProjectivePoint:
    x: int
    y: int
    z: int

    def __post_init__(self):
        x, y, z = self.x, self.y, self.z
        if x == y == z == 0:
            raise ValueError("[0:0:0] is not a projective point")
        g = reduce(gcd, (x, y, z))
        lead = next(c for c in (x, y, z) if c != 0)
        if lead < 0:
            g = -g
        object.__setattr__(self, "x", x // g)
        object.__setattr__(self, "y", y // g)
        object.__setattr__(self, "z", z // g)

    @classmethod
    def from_rationals(cls, x: RationalLike, y: RationalLike, z: RationalLike = 1) -> "ProjectivePoint":
        coords = [as_rational(c) for c in (x, y, z)]
        d = reduce(lcm, (c.denominator for c in coords))
        return cls(*(int(c * d) for c in coords))

    @classmethod
    def affine(cls, x: RationalLike, y: RationalLike) -> "ProjectivePoint":
        return cls.from_rationals(x, y, 1)

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        """Accept ``"x:y:z"`` (rational entries allowed) or affine ``"x,y"``."""
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError(f"expected x:y:z, got {text!r}")
            return cls.from_rationals(*(parse_rational(p) for p in parts))
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected x,y or x:y:z, got {text!r}")
        return cls.affine(*(parse_rational(p) for p in parts))

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def at_infinity(self) -> bool:
        return self.z == 0

    def to_affine(self) -> tuple[Fraction, Fraction]:
        if self.z == 0:
            raise ValueError(f"{self} is at infinity")
        return Fraction(self.x, self.z), Fraction(self.y, self.z)

    def __str__(self) -> str:
        return f"{self.x}:{self.y}:{self.z}"


O = ProjectivePoint(1, -1, 0)
Q = ProjectivePoint(1, 0, 0)


class LevelSet(str, Enum):
    ELLIPTIC = "Elliptic"
    THREE_LINES = "ThreeLines"
    LINE_HYPERBOLA = "LineHyperbola"
    RATIONAL_CUBIC = "RationalCubic"


def classify_level_set(a: RationalLike, h: RationalLike) -> LevelSet:
    a, h = as_rational(a), as_rational(h)
    if h == 0:
        return LevelSet.THREE_LINES
    if h == a - 1:
        return LevelSet.LINE_HYPERBOLA
    if a == 0:
        # the fixed point (1,1) of the globally 6-periodic map sits on h = 8
        if h == 8:
            return LevelSet.RATIONAL_CUBIC
    elif (2 * a * h - 2 * a * a - 10 * a + 1) ** 2 == (4 * a + 1) ** 3:
        return LevelSet.RATIONAL_CUBIC
    return LevelSet.ELLIPTIC


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True)
class LynessCurve:
    a: Fraction
    h: Fraction
    kind: LevelSet = field(init=False, compare=False)

    def __init__(self, a: RationalLike, h: RationalLike):
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "h", as_rational(h))
        object.__setattr__(self, "kind", classify_level_set(self.a, self.h))

    @property
    def is_elliptic(self) -> bool:
        return self.kind is LevelSet.ELLIPTIC

    def __str__(self) -> str:
        return f"C(a={self.a}, h={self.h})"

    def form(self, x, y, z):
        return (x + z) * (y + z) * (x + y + self.a * z) - self.h * x * y * z

    def gradient(self, p: ProjectivePoint) -> tuple:
        x, y, z = p.coords
        a, h = self.a, self.h
        u, v, w = x + z, y + z, x + y + a * z
        return (
            v * w + u * v - h * y * z,
            u * w + u * v - h * x * z,
            v * w + u * w + a * u * v - h * x * y,
        )

    def contains(self, p: ProjectivePoint) -> bool:
        return self.form(*p.coords) == 0

    # group law -------------------------------------------------------------

    def _require(self, *points: ProjectivePoint) -> None:
        if not self.is_elliptic:
            raise SingularCurve(f"{self} is {self.kind.value}, not elliptic")
        for p in points:
            if not self.contains(p):
                raise NotOnCurve(f"{p} is not on {self}")

    def _binary_cubic(self, p, r):
        """Coefficients (c3, c2, c1, c0) of form(u*p + v*r) in u^3, u^2 v, u v^2, v^3."""
        def f(u, v):
            return self.form(*(u * pi + v * ri for pi, ri in zip(p, r)))

        c3, c0 = f(1, 0), f(0, 1)
        s = f(1, 1) - c3 - c0    # c2 + c1
        d = f(1, -1) - c3 + c0   # c1 - c2
        return c3, (s - d) / 2, (s + d) / 2, c0

    def third_intersection(self, p: ProjectivePoint, q: ProjectivePoint) -> ProjectivePoint:
        self._require(p, q)
        if p != q:
            _, c2, c1, _ = self._binary_cubic(p.coords, q.coords)
            # form = u v (c2 u + c1 v); remaining root is [u:v] = [c1:-c2]
            if c1 == 0 and c2 == 0:
                raise SingularCurve(f"line through {p} and {q} lies in {self}")
            return ProjectivePoint.from_rationals(*(c1 * pi - c2 * qi for pi, qi in zip(p.coords, q.coords)))
        g = self.gradient(p)
        if all(gi == 0 for gi in g):
            raise ZeroGradient(f"singular point {p} on {self}")
        # p x grad lies on the tangent line and is never proportional to p
        r = _cross(p.coords, g)
        _, _, c1, c0 = self._binary_cubic(p.coords, r)
        # form = v^2 (c1 u + c0 v); remaining root is [u:v] = [c0:-c1]
        if c1 == 0 and c0 == 0:
            raise SingularCurve(f"tangent at {p} lies in {self}")
        return ProjectivePoint.from_rationals(*(c0 * pi - c1 * ri for pi, ri in zip(p.coords, r)))

    def add(self, p: ProjectivePoint, q: ProjectivePoint) -> ProjectivePoint:
        return self.third_intersection(O, self.third_intersection(p, q))

    def neg(self, p: ProjectivePoint) -> ProjectivePoint:
        return self.third_intersection(p, self.third_intersection(O, O))

    def mul(self, p: ProjectivePoint, k: int) -> ProjectivePoint:
        self._require(p)
        if k < 0:
            return self.neg(self.mul(p, -k))
        result, base = O, p
        while k:
            if k & 1:
                result = self.add(result, base)
            k >>= 1
            if k:
                base = self.add(base, base)
        return result

    def order_of(self, p: ProjectivePoint, cap: int = 30) -> int:
        """Least n <= cap with n*p = O; raises InfiniteOrPastCap otherwise."""
        self._require(p)
        acc = p
        for n in range(1, cap + 1):
            if acc == O:
                return n
            acc = self.add(acc, p)
        raise InfiniteOrPastCap(f"{p} has no order <= {cap} on {self}")

    def order_or_none(self, p: ProjectivePoint, cap: int = 30) -> int | None:
        try:
            return self.order_of(p, cap)
        except InfiniteOrPastCap:
            return None

    def lyness_step(self, p: ProjectivePoint) -> ProjectivePoint:
        return projective_step(self.a, p)


def projective_step(a: RationalLike, p: ProjectivePoint) -> ProjectivePoint:
    """[x:y:z] -> [xy : az^2 + yz : xz]."""
    a = as_rational(a)
    x, y, z = p.coords
    image = (Fraction(x * y), a * z * z + y * z, Fraction(x * z))
    if all(c == 0 for c in image):
        raise BasePoint(f"{p} is a base point of the projective Lyness map")
    return ProjectivePoint.from_rationals(*image)


def q_multiples(a: RationalLike, h: RationalLike, k: int) -> ProjectivePoint:
    """Closed-form k*Q for k in [-5, 7] on C_{a,h}."""
    a, h = as_rational(a), as_rational(h)
    if a * (a - 1) == 0:
        raise FormulaPole("closed forms need a(a-1) != 0")

    def q(num, den):
        if den == 0:
            raise FormulaPole(f"pole in the {k}Q formula at a={a}, h={h}")
        return num / den

    def pt(x, y):
        return ProjectivePoint.from_rationals(x, y, 1)

    u4 = q(a * h - a + 1, a - 1)
    u5 = q(-a * a - a * h + 2 * a - 1, a * (a - 1))
    if k == 0:
        return O
    if k == 1:
        return Q
    if k == 2:
        return pt(-1, 0)
    if k == 3:
        return pt(0, -a)
    if k == 4:
        return pt(-a, u4)
    if k == 5:
        return pt(u4, u5)
    u6 = q(a**3 - 2 * a * a - a * h + 2 * a - 1, a * (a * h - a + 1))
    if k == 6:
        return pt(u5, u6)
    if k == 7:
        # x of 7Q is y of 6Q: one Lyness step shifts coordinates
        num = -(a**4) * h + a**3 * h + a**3 + a * a * h - 3 * a * a - a * h + 3 * a - 1
        den = (a**3 * h - a**3 + a * a * h * h - 3 * a * a * h + 3 * a * a
               + 2 * a * h - 3 * a + 1)
        return pt(u6, q(num, den))
    if k == -1:
        return ProjectivePoint(0, 1, 0)
    if k == -2:
        return pt(0, -1)
    if k == -3:
        return pt(-a, 0)
    if k == -4:
        return pt(u4, -a)
    if k == -5:
        return pt(u5, u4)
    raise ValueError(f"no closed form for k={k}; use LynessCurve.mul")


def h_for_period(n: int, a: RationalLike) -> Fraction:
    """Level h on which Q has order `n`, as a function of a.

    Periods 5, 6 and 12 are not single-valued in a: 5 needs a = 1 and 6
    needs a = 0 (with h free), 12 is a one-parameter family in both a and
    h (see :func:`lyness.special.period12_parametrization`).  Those raise
    ValueError.
    """
    a = as_rational(a)
    if n == 5:
        raise ValueError("period 5 is the constraint a = 1 with h free")
    if n == 6:
        raise ValueError("period 6 is the constraint a = 0 with h free")
    if n == 12:
        raise ValueError("period 12 is parametrized jointly in (a, h); see period12_parametrization")
    if a == 0 or (n == 10 and a == -1):
        raise FormulaPole(f"h_for_period({n}) has a pole at a={a}")
    if n == 7:
        return (a - 1) / a
    if n == 8:
        return -((a - 1) ** 2) / a
    if n == 9:
        return (a - 1) * (a * a - a + 1) / a
    if n == 10:
        return (a - 1) / (a * (a + 1))
    raise ValueError(f"no closed form for period {n}")


def nine_curve(a: RationalLike) -> LynessCurve:
    return LynessCurve(a, h_for_period(9, a))


def torsion9_points(a: RationalLike) -> list[ProjectivePoint]:
    """The nine rational points of the 9-torsion subgroup on the period-9 curve, as kQ for k=1..8 then O."""
    a = as_rational(a)
    if a * (a - 1) == 0:
        raise FormulaPole("torsion list needs a(a-1) != 0")
    m = a * (a - 1)
    pt = ProjectivePoint.affine
    return [
        Q,
        pt(-1, 0),
        pt(0, -a),
        pt(-a, m),
        pt(m, -a),
        pt(-a, 0),
        pt(0, -1),
        ProjectivePoint(0, 1, 0),
        O,
    ]
