"""Changes of model: Lyness cubic -> Tate normal form -> short Weierstrass,
and the quartic K^2 = A^4 + w2 A^2 + w1 A + w0 -> cubic isomorphism.

The short-Weierstrass chord law here is written independently of
:mod:`lyness.curve` so the two group laws can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from lyness.curve import LynessCurve, NotOnCurve, ProjectivePoint
from lyness.exactnum import RationalLike, as_rational

AffinePoint = Tuple[Fraction, Fraction]
# None is the point at infinity
WPoint = Optional[AffinePoint]


class DegenerateParameters(ArithmeticError):
    pass


class PoleOfMap(ArithmeticError):
    pass


class SingularImage(ArithmeticError):
    pass


class NotOnQuartic(ArithmeticError):
    pass


class AtInfinityBranch(ArithmeticError):
    """The cubic point comes from a point at infinity of the quartic."""


@dataclass(frozen=True)
class ShortWeierstrass:
    """Y^2 = X^3 + p X + q."""

    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "q", as_rational(self.q))

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.p**3 + 27 * self.q**2)

    @property
    def is_singular(self) -> bool:
        return 4 * self.p**3 + 27 * self.q**2 == 0

    def contains(self, pt: WPoint) -> bool:
        if pt is None:
            return True
        x, y = pt
        return y * y == x**3 + self.p * x + self.q

    def neg(self, pt: WPoint) -> WPoint:
        return None if pt is None else (pt[0], -pt[1])

    def add(self, p1: WPoint, p2: WPoint) -> WPoint:
        for pt in (p1, p2):
            if not self.contains(pt):
                raise NotOnCurve(f"{pt} is not on {self}")
        if p1 is None:
            return p2
        if p2 is None:
            return p1
        (x1, y1), (x2, y2) = p1, p2
        if x1 == x2:
            if y1 != y2 or y1 == 0:
                return None
            lam = (3 * x1 * x1 + self.p) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def mul(self, pt: WPoint, k: int) -> WPoint:
        if k < 0:
            return self.neg(self.mul(pt, -k))
        result, base = None, pt
        while k:
            if k & 1:
                result = self.add(result, base)
            k >>= 1
            if k:
                base = self.add(base, base)
        return result


def sw_add(c: ShortWeierstrass, p1: WPoint, p2: WPoint) -> WPoint:
    return c.add(p1, p2)


def sw_mul(c: ShortWeierstrass, pt: WPoint, k: int) -> WPoint:
    return c.mul(pt, k)


# -- Tate normal form ---------------------------------------------------------


@dataclass(frozen=True)
class TateCurve:
    """Y^2 + (1-c) X Y - b Y = X^3 - b X^2, with the marked point at (0, 0)."""

    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "c", as_rational(self.c))

    def form(self, X, Y, Z):
        b, c = self.b, self.c
        return Y * Y * Z + (1 - c) * X * Y * Z - b * Y * Z * Z - X**3 + b * X * X * Z

    def contains(self, pt: ProjectivePoint) -> bool:
        return self.form(*pt.coords) == 0

    def _completion(self):
        # shift constants taking the model to Y'^2 = X'^3 + p X' + q
        a1, a2, a3 = 1 - self.c, -self.b, -self.b
        A2 = a2 + a1 * a1 / 4
        A4 = a1 * a3 / 2
        A6 = a3 * a3 / 4
        return a1, a3, A2, A4, A6

    def to_short_weierstrass(self) -> ShortWeierstrass:
        _, _, A2, A4, A6 = self._completion()
        return ShortWeierstrass(A4 - A2 * A2 / 3, 2 * A2**3 / 27 - A2 * A4 / 3 + A6)

    def point_to_short_weierstrass(self, pt: ProjectivePoint) -> WPoint:
        if not self.contains(pt):
            raise NotOnCurve(f"{pt} is not on {self}")
        if pt.z == 0:
            return None
        X, Y = pt.to_affine()
        a1, a3, A2, _, _ = self._completion()
        return (X + A2 / 3, Y + (a1 * X + a3) / 2)


def lyness_to_tate(a: RationalLike, h: RationalLike) -> TateCurve:
    a, h = as_rational(a), as_rational(h)
    if a - 1 - h == 0:
        raise DegenerateParameters(f"h = a - 1 at a={a}")
    c = 1 / (a - 1 - h)
    b = -h * c * c
    t = TateCurve(b, c)
    if t.to_short_weierstrass().is_singular:
        raise DegenerateParameters(f"C(a={a}, h={h}) is not elliptic")
    return t


def tate_to_lyness(t: TateCurve) -> tuple[Fraction, Fraction]:
    b, c = t.b, t.c
    if c == 0:
        raise DegenerateParameters("c = 0: the marked point has order 4")
    return (c * c + c - b) / (c * c), -b / (c * c)


def lyness_point_to_tate(a: RationalLike, h: RationalLike, pt: ProjectivePoint) -> ProjectivePoint:
    """Linear change of coordinates sending O to [0:1:0] and Q to (0, 0)."""
    curve = LynessCurve(a, h)
    if not curve.contains(pt):
        raise NotOnCurve(f"{pt} is not on {curve}")
    t = lyness_to_tate(a, h)
    b, c = t.b, t.c
    if c == -1:
        raise PoleOfMap("c = -1")
    x, y, z = pt.coords
    k = c + 1
    return ProjectivePoint.from_rationals(
        -b / k * z,
        -b * c / k * (y + z),
        -c / k * (x + y) - z,
    )


def tate_point_to_lyness(a: RationalLike, h: RationalLike, pt: ProjectivePoint) -> ProjectivePoint:
    t = lyness_to_tate(a, h)
    b, c = t.b, t.c
    if c == -1:
        raise PoleOfMap("c = -1")
    X, Y, Z = pt.coords
    k = c + 1
    z = -X * k / b
    y = -Y * k / (b * c) - z
    x = -(Z + z) * k / c - y
    return ProjectivePoint.from_rationals(x, y, z)


def lyness_to_short_weierstrass(a: RationalLike, h: RationalLike) -> ShortWeierstrass:
    return lyness_to_tate(a, h).to_short_weierstrass()


def lyness_point_to_short_weierstrass(a: RationalLike, h: RationalLike, pt: ProjectivePoint) -> WPoint:
    t = lyness_to_tate(a, h)
    return t.point_to_short_weierstrass(lyness_point_to_tate(a, h, pt))


# -- quartic <-> cubic --------------------------------------------------------


@dataclass(frozen=True)
class QuarticCurve:
    """K^2 = A^4 + w2 A^2 + w1 A + w0."""

    w2: Fraction
    w1: Fraction
    w0: Fraction

    def __post_init__(self):
        for name in ("w2", "w1", "w0"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def rhs(self, A: Fraction) -> Fraction:
        return A**4 + self.w2 * A * A + self.w1 * A + self.w0

    def contains(self, A: RationalLike, K: RationalLike) -> bool:
        A, K = as_rational(A), as_rational(K)
        return K * K == self.rhs(A)

    def cubic_coefficients(self) -> ShortWeierstrass:
        w2, w1, w0 = self.w2, self.w1, self.w0
        return ShortWeierstrass(
            -(w2 * w2 / 48 + w0 / 4),
            w1 * w1 / 64 + w2**3 / 864 - w0 * w2 / 24,
        )


def quartic_to_cubic(q: QuarticCurve) -> ShortWeierstrass:
    e = q.cubic_coefficients()
    if e.is_singular:
        raise SingularImage(f"{q} maps to a singular cubic")
    return e


def quartic_point_to_cubic(q: QuarticCurve, A: RationalLike, K: RationalLike) -> AffinePoint:
    A, K = as_rational(A), as_rational(K)
    if not q.contains(A, K):
        raise NotOnQuartic(f"({A}, {K}) is not on {q}")
    X = (A * A + K + q.w2 / 6) / 2
    Y = A / 2 * (A * A + K + q.w2 / 2) + q.w1 / 8
    return X, Y


def cubic_point_to_quartic(q: QuarticCurve, X: RationalLike, Y: RationalLike) -> AffinePoint:
    X, Y = as_rational(X), as_rational(Y)
    if not q.cubic_coefficients().contains((X, Y)):
        raise NotOnCurve(f"({X}, {Y}) is not on the cubic of {q}")
    d = X + q.w2 / 6
    if d == 0:
        raise AtInfinityBranch(f"X = -w2/6 at ({X}, {Y})")
    A = (Y - q.w1 / 8) / d
    return A, 2 * X - q.w2 / 6 - A * A
