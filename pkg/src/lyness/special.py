"""Constructions tied to particular level sets and parameter families:
Möbius dynamics on the non-elliptic levels, the rational period families,
the period-12 parametrization, and the nine-periodic seed generator built
on the sum line x + y = 23/4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from lyness.curve import LevelSet, LynessCurve, ProjectivePoint, classify_level_set, h_for_period, nine_curve
from lyness.dynamics import detect_period, invariant_h
from lyness.exactnum import RationalLike, as_rational, is_square, sqrt_exact
from lyness.forms import (
    AtInfinityBranch,
    QuarticCurve,
    ShortWeierstrass,
    cubic_point_to_quartic,
    quartic_to_cubic,
)


class ExcludedParameter(ValueError):
    pass


class WrongClass(ValueError):
    pass


class ZeroDeterminant(ArithmeticError):
    pass


class Pole(ArithmeticError):
    pass


# -- Möbius maps --------------------------------------------------------------

_PERIOD_BY_RATIO = {Fraction(0): 2, Fraction(1): 3, Fraction(2): 4, Fraction(3): 6}


@dataclass(frozen=True)
class MobiusMap:
    """t -> (A t + B) / (C t + D)."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @property
    def det(self) -> Fraction:
        return self.A * self.D - self.B * self.C

    @property
    def trace(self) -> Fraction:
        return self.A + self.D

    def __call__(self, t: Fraction) -> Fraction | None:
        """Image of t; None stands for the point at infinity."""
        if t is None:
            return None if self.C == 0 else self.A / self.C
        den = self.C * t + self.D
        return None if den == 0 else (self.A * t + self.B) / den

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        A, B, C, D = self.A, self.B, self.C, self.D
        a, b, c, d = other.A, other.B, other.C, other.D
        return MobiusMap(A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d)

    @property
    def is_scalar(self) -> bool:
        return self.B == 0 and self.C == 0 and self.A == self.D


@dataclass(frozen=True)
class MobiusClass:
    kind: str  # "identity", "periodic" or "nonperiodic"
    period: int | None = None

    def __str__(self) -> str:
        return f"periodic({self.period})" if self.kind == "periodic" else self.kind


def mobius_classify(m: MobiusMap) -> MobiusClass:
    """Finite order of a Möbius map from the invariant trace^2/det.

    A non-scalar matrix has order p in PGL(2) exactly when its eigenvalue
    ratio is a primitive p-th root of unity; with rational entries that
    forces 2 + ratio + 1/ratio = tr^2/det to lie in {0, 1, 2, 3}.
    """
    if m.det == 0:
        raise ZeroDeterminant(f"{m} is not invertible")
    if m.is_scalar:
        return MobiusClass("identity", 1)
    period = _PERIOD_BY_RATIO.get(m.trace**2 / m.det)
    if period is None:
        return MobiusClass("nonperiodic")
    return MobiusClass("periodic", period)


# -- non-elliptic level sets --------------------------------------------------


@dataclass
class NonEllipticReport:
    level: LevelSet
    mobius: MobiusMap | None
    mobius_class: MobiusClass | None
    power: int  # F_a^power restricts to the Möbius map
    map_period: int | None  # period of F_a on the continuum, if any
    b: Fraction | None = None
    parametrization: Callable[[Fraction], tuple[Fraction, Fraction]] | None = field(default=None, repr=False)
    note: str = ""


def cubic_branch_b(a: RationalLike, h: RationalLike) -> Fraction:
    """The rational b = ±sqrt(4a+1) with (b+3)^3 / (4(b+1)) = h."""
    a, h = as_rational(a), as_rational(h)
    s = sqrt_exact(4 * a + 1)
    if s is None:
        raise WrongClass(f"4a+1 is not a rational square at a={a}")
    for b in (s, -s):
        if b != -1 and (b + 3) ** 3 / (4 * (b + 1)) == h:
            return b
    raise WrongClass(f"h={h} is not a fixed-point level at a={a}")


def cubic_parametrization(b: RationalLike) -> Callable[[Fraction], tuple[Fraction, Fraction]]:
    b = as_rational(b)

    def point(t: RationalLike) -> tuple[Fraction, Fraction]:
        t = as_rational(t)
        x = (3 * t + t * b - 2) * (2 * t * b + 4 * t - b - 1) / (2 * (b + 1) * (t - 1))
        y = -(3 * t + t * b - b - 1) * (2 * t * b + 4 * t - 3 - b) / (2 * t * (b + 1))
        return x, y

    return point


def nonelliptic_dynamics(a: RationalLike, h: RationalLike) -> NonEllipticReport:
    a, h = as_rational(a), as_rational(h)
    level = classify_level_set(a, h)
    if level is LevelSet.ELLIPTIC:
        raise WrongClass(f"C(a={a}, h={h}) is elliptic")

    if level is LevelSet.THREE_LINES:
        # F^3 on {x = -1}: y -> (1-a)/(y+a)
        m = MobiusMap(0, 1 - a, 1, a)
        power = 3
    elif level is LevelSet.LINE_HYPERBOLA:
        # F^2 on {x + y + 1 = 0}: x -> (-x + a - 1)/x
        m = MobiusMap(-1, a - 1, 1, 0)
        power = 2
    else:
        b = cubic_branch_b(a, h) if a != 0 else Fraction(1)
        m = MobiusMap(1, -(b + 1) / (2 * b + 4), 1, 0)
        cls = mobius_classify(m)
        period = cls.period if cls.kind == "periodic" else None
        return NonEllipticReport(
            level, m, cls, 1, period, b=b, parametrization=cubic_parametrization(b),
            note="only the fixed point is periodic" if period is None else "",
        )

    if m.det == 0:
        return NonEllipticReport(level, m, None, power, None, note="degenerate restriction: no periodic orbits")
    cls = mobius_classify(m)
    period = power * cls.period if cls.kind == "periodic" else None
    return NonEllipticReport(level, m, cls, power, period)


# -- period families -----------------------------------------------------------


def family_point(period: int, u: RationalLike) -> tuple[Fraction, Fraction, Fraction]:
    """(a, x0, x1) realizing `period` in the one-parameter rational families.

    Finitely many u in each family collapse to a proper divisor of the
    period (e.g. u = 2 in the period-3 family makes (-1, -1) a fixed
    point); those raise ExcludedParameter, as do the poles.
    """
    a, x0, x1 = _family_point(period, as_rational(u))
    try:
        report = detect_period(a, (x0, x1), max_steps=period)
    except ArithmeticError:
        report = None
    if report is None or report.period != period:
        got = "forbidden set" if report is None or report.status == "forbidden" else report.period
        raise ExcludedParameter(f"u={u} degenerates the period-{period} family (got {got})")
    return a, x0, x1


def _family_point(period: int, u: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    try:
        if period == 1:
            if u == 0:
                raise ExcludedParameter("u = 0")
            return u * u - u, u, u
        if period == 2:
            if u in (0, -1):
                raise ExcludedParameter("u in {-1, 0}")
            return u * u + u + 1, u, -u - 1
        if period == 3:
            if u == 1:
                raise ExcludedParameter("a = 1 is globally 5-periodic")
            return u, Fraction(-1), Fraction(-1)
        if period == 7:
            x0 = (u * u - 1) / (u * u - u + 1)
            return (u * u - 1) / (2 * u - 1), x0, -x0
        if period == 8:
            x0 = (u * u - 1) / (u * u + 1)
            return (u * u - 1) / (u * u + 2 * u - 1), x0, -x0
    except ZeroDivisionError:
        raise ExcludedParameter(f"pole of the period-{period} family at u={u}") from None
    raise ValueError(f"no one-parameter family for period {period}")


def period12_parametrization(t: RationalLike) -> tuple[Fraction, Fraction]:
    t = as_rational(t)
    if t in (0, 1, -1):
        raise ExcludedParameter("t must avoid 0 and ±1")
    d = 3 * t * t + 1
    a = 2 * t * (1 + t) / d
    h = -((t - 1) ** 2) * (t * t + 1) / (t * (1 + t) * d)
    return a, h


@dataclass(frozen=True)
class Coexistence:
    fixed_point_rational: bool
    two_periodic_rational: bool
    fixed_points: tuple[Fraction, ...] = ()


def coexistence_tests(a: RationalLike) -> Coexistence:
    a = as_rational(a)
    s = sqrt_exact(4 * a + 1)
    fixed = () if s is None else tuple(sorted({(1 + s) / 2, (1 - s) / 2} - {Fraction(0)}))
    return Coexistence(s is not None, is_square(4 * a - 3), fixed)


# -- the x + y = 23/4 construction ----------------------------------------------

S_LINE = Fraction(23, 4)
A_SHIFT = Fraction(4135, 2116)
A1_DECIMAL = "5.41147624"
ASTAR_DECIMAL = "5.41147413"

REF_QUARTIC = QuarticCurve(
    Fraction(-36024561, 2238728),
    Fraction(-38272338, 148035889),
    Fraction(1009624858257249, 20047612231936),
)
REF_CUBIC = ShortWeierstrass(Fraction(-1288423179, 71639296), Fraction(8775405707427, 303177500672))
REF_R = (Fraction(18243, 8464), Fraction(81, 184))


def a1_cubic(a: RationalLike) -> Fraction:
    """a^3 - (2019/529) a^2 - (777/92) a - 1; a1 is its largest root."""
    a = as_rational(a)
    return a**3 - Fraction(2019, 529) * a * a - Fraction(777, 92) * a - 1


def astar_cubic(a: RationalLike) -> Fraction:
    """a^3 - 6a^2 + 3a + 1; a_* is its largest root."""
    a = as_rational(a)
    return a**3 - 6 * a * a + 3 * a + 1


def delta3(a: RationalLike) -> Fraction:
    a = as_rational(a)
    return (a - 4) * a1_cubic(a)


def delta2(a: RationalLike) -> Fraction:
    a = as_rational(a)
    if a in (4, Fraction(-1, 2)):
        raise Pole(f"delta2 has a pole at a={a}")
    return (Fraction(46) / (4 * (1 + 2 * a) * (a - 4))) ** 2 * delta3(a)


def product_on_line(a: RationalLike) -> Fraction:
    """x*y for the period-9 curve points on x + y = 23/4."""
    a = as_rational(a)
    if a in (4, Fraction(-1, 2)):
        raise Pole(f"P has a pole at a={a}")
    return Fraction(27, 4) * a * (4 * a + 23) / ((a - 4) * (1 + 2 * a) ** 2)


def product_for_sum(a: RationalLike, s: RationalLike) -> Fraction:
    """x*y on the period-9 curve as a function of a and the sum s = x + y."""
    a, s = as_rational(a), as_rational(s)
    den = a**3 - 3 * a * a + (2 - s) * a - 1
    if den == 0:
        raise Pole(f"no finite product at a={a}, s={s}")
    return a * (1 + s) * (a + s) / den


def at_least_a1(a: RationalLike) -> bool:
    """Exact test a >= a1 (the largest root of delta3)."""
    a = as_rational(a)
    return a > 4 and a1_cubic(a) >= 0


def pipeline_constants() -> tuple[QuarticCurve, ShortWeierstrass, tuple[Fraction, Fraction]]:
    cubic = quartic_to_cubic(REF_QUARTIC)
    assert cubic == REF_CUBIC, "quartic does not map to the stated cubic"
    assert REF_CUBIC.contains(REF_R), "R is not on the cubic"
    return REF_QUARTIC, REF_CUBIC, REF_R


@dataclass(frozen=True)
class NineSeed:
    k: int
    a: Fraction
    x: Fraction
    y: Fraction
    positive: bool
    at_least_a1: bool


@dataclass(frozen=True)
class Skipped:
    k: int
    reason: str


def seed_from_cubic_point(X: RationalLike, Y: RationalLike, k: int = 0) -> NineSeed | Skipped:
    """Pull a point of the cubic back to a 9-periodic seed on x + y = 23/4.

    The larger root is returned as x; the swapped pair is an equally valid
    seed on the same curve.
    """
    try:
        A, K = cubic_point_to_quartic(REF_QUARTIC, X, Y)
    except AtInfinityBranch as exc:
        return Skipped(k, f"point at infinity of the quartic: {exc}")
    a = A + A_SHIFT
    if a * (a - 1) == 0:
        return Skipped(k, f"degenerate parameter a={a}")
    try:
        p = product_on_line(a)
    except Pole as exc:
        return Skipped(k, str(exc))
    root = sqrt_exact(S_LINE * S_LINE - 4 * p)
    if root is None:
        raise ArithmeticError(f"discriminant is not a square at a={a} although K={K} is rational")
    x, y = (S_LINE + root) / 2, (S_LINE - root) / 2
    # the first quadrant is invariant only for a > 0
    return NineSeed(k, a, x, y, a > 0 and x > 0 and y > 0, at_least_a1(a))


def generate_nine_periodic(k: int, verify: bool = True) -> NineSeed | Skipped:
    if k == 0:
        raise ExcludedParameter("k must be nonzero")
    pt = REF_CUBIC.mul(REF_R, k)
    if pt is None:
        return Skipped(k, "kR is the point at infinity")
    seed = seed_from_cubic_point(*pt, k=k)
    if verify and isinstance(seed, NineSeed):
        check_nine_seed(seed.a, seed.x, seed.y)
    return seed


def check_nine_seed(a: Fraction, x: Fraction, y: Fraction) -> None:
    report = detect_period(a, (x, y), max_steps=20)
    if report.period != 9:
        raise ArithmeticError(f"seed ({a}; {x}, {y}) is not 9-periodic: {report.status} {report.period}")


def scan_nine_periodic(kmin: int, kmax: int, positive_only: bool = False) -> list[NineSeed]:
    out = []
    for k in range(kmin, kmax + 1):
        if k == 0:
            continue
        seed = generate_nine_periodic(k)
        if isinstance(seed, NineSeed) and (seed.positive or not positive_only):
            out.append(seed)
    return out


def first_positive_seed(bound: int = 25) -> NineSeed | None:
    for n in range(1, bound + 1):
        for k in (n, -n):
            seed = generate_nine_periodic(k)
            if isinstance(seed, NineSeed) and seed.positive:
                return seed
    return None


# -- catalog of known period-9 witnesses ------------------------------------

_W = Fraction

NINE_WITNESSES: tuple[tuple[str, Fraction, Fraction, Fraction], ...] = (
    ("a=7", _W(7), _W(3, 2), _W(5, 7)),
    ("a=11", _W(11), _W(29, 82), _W(19, 22)),
    ("a=13", _W(13), _W(1584676, 61133), _W(335937, 856427)),
    ("a=19", _W(19), _W(4259697, 16150), _W(5178617, 168283)),
    ("a=408/23 gen 1", _W(408, 23), _W(15708, 38617), _W(1275, 4346)),
    ("a=408/23 gen 2", _W(408, 23), _W(117348775936, 1130069373), _W(17875982344, 22803541107)),
    ("a=408/23 gen 3", _W(408, 23), _W(-5313, 5186), _W(199644, 17)),
    ("a=408/23 gen 4", _W(408, 23), _W(96539240, 980237), _W(892914, 1232041)),
    ("a=9 generator", _W(9), _W(-3, 70), _W(-1273, 105)),
)


def known_nine_witnesses() -> list[tuple[str, Fraction, Fraction, Fraction]]:
    return list(NINE_WITNESSES)


def witness_on_nine_curve(a: Fraction, x: Fraction, y: Fraction) -> bool:
    return nine_curve(a).contains(ProjectivePoint.affine(x, y))


def family_level(period: int, u: RationalLike) -> tuple[Fraction, Fraction]:
    """(a, h) of the family point, for cross-checks against h_for_period."""
    a, x0, x1 = family_point(period, u)
    return a, invariant_h(a, (x0, x1))

