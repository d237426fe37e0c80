import random
from fractions import Fraction as F

import pytest

from lyness.curve import (
    O,
    Q,
    BasePoint,
    FormulaPole,
    InfiniteOrPastCap,
    LevelSet,
    LynessCurve,
    NotOnCurve,
    ProjectivePoint,
    SingularCurve,
    classify_level_set,
    h_for_period,
    nine_curve,
    projective_step,
    q_multiples,
    torsion9_points,
)
from lyness.dynamics import invariant_h, step
from lyness.verify import random_elliptic_curve

C7 = nine_curve(7)
P7 = ProjectivePoint.affine(F(3, 2), F(5, 7))


def det3(p, q, r):
    (a, b, c), (d, e, f), (g, h, i) = p.coords, q.coords, r.coords
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def test_canonical_points():
    assert ProjectivePoint(-2, 4, -6) == ProjectivePoint(1, -2, 3)
    assert ProjectivePoint(0, -3, 6).coords == (0, 1, -2)
    assert ProjectivePoint.affine(F(3, 2), F(5, 7)).coords == (21, 10, 14)
    assert ProjectivePoint.parse("3/2,5/7") == ProjectivePoint.parse("21:10:14")
    assert str(O) == "1:-1:0"
    with pytest.raises(ValueError):
        ProjectivePoint(0, 0, 0)


def test_contains():
    for a, h in [(F(7), F(258, 7)), (F(-3, 5), F(2)), (F(1), F(12))]:
        assert LynessCurve(a, h).contains(O)
    assert not C7.contains(ProjectivePoint(3, -2, 2))
    assert nine_curve(9).contains(ProjectivePoint.affine(F(-3, 70), F(-1273, 105)))


def test_classify_examples():
    assert classify_level_set(2, 1) is LevelSet.LINE_HYPERBOLA
    assert classify_level_set(2, 0) is LevelSet.THREE_LINES
    # oracle: the level through the fixed point x = (1 + sqrt(9))/2 = 2
    x = F(2)
    assert x * x == x + 2
    h_fixed = invariant_h(2, (x, x))
    assert h_fixed == F(27, 2)
    assert classify_level_set(2, h_fixed) is LevelSet.RATIONAL_CUBIC
    assert classify_level_set(7, F(258, 7)) is LevelSet.ELLIPTIC
    assert classify_level_set(0, 8) is LevelSet.RATIONAL_CUBIC
    assert classify_level_set(1, 12) is LevelSet.ELLIPTIC


def test_rational_cubic_is_fixed_point_level():
    for u in [F(3), F(-2), F(5, 3), F(-7, 4)]:
        a = u * u - u
        if a == 0:
            continue
        h = invariant_h(a, (u, u))
        if h not in (0, a - 1):
            assert classify_level_set(a, h) is LevelSet.RATIONAL_CUBIC


def test_projective_step():
    with pytest.raises(BasePoint):
        projective_step(7, Q)
    img = projective_step(7, P7)
    assert img == ProjectivePoint(5, 36, 7)
    assert img.to_affine() == step(7, (F(3, 2), F(5, 7)))
    assert projective_step(1, ProjectivePoint(1, 1, 1)) == ProjectivePoint(1, 2, 1)


def test_third_intersection_line_at_infinity():
    assert C7.third_intersection(Q, ProjectivePoint(0, 1, 0)) == O


def test_third_intersection_is_collinear_involution():
    two_q = ProjectivePoint(-1, 0, 1)
    r = C7.third_intersection(O, two_q)
    assert C7.contains(r)
    assert det3(O, two_q, r) == 0
    assert C7.third_intersection(O, r) == two_q


def test_tangent_at_q():
    t = C7.third_intersection(Q, Q)
    assert C7.contains(t)
    assert C7.third_intersection(O, t) == ProjectivePoint(-1, 0, 1)


def test_group_examples():
    assert C7.add(P7, O) == P7
    assert C7.add(Q, Q) == ProjectivePoint(-1, 0, 1)
    assert C7.add(ProjectivePoint(-1, 0, 1), Q) == ProjectivePoint(0, -7, 1)
    assert C7.add(P7, Q).to_affine() == (F(5, 7), F(36, 7))
    assert C7.neg(O) == O
    assert C7.neg(Q) == ProjectivePoint(0, 1, 0)
    assert C7.neg(ProjectivePoint(0, -7, 1)) == ProjectivePoint(-7, 0, 1)


def test_mul_and_order():
    assert C7.mul(Q, 9) == O
    assert C7.mul(P7, 0) == O
    assert C7.mul(P7, -2) == C7.neg(C7.mul(P7, 2))
    assert C7.order_of(O) == 1
    assert C7.order_of(Q, 30) == 9
    with pytest.raises(InfiniteOrPastCap):
        nine_curve(9).order_of(ProjectivePoint.affine(F(-3, 70), F(-1273, 105)), 30)


def test_errors():
    with pytest.raises(NotOnCurve):
        C7.add(P7, ProjectivePoint(3, -2, 2))
    singular = LynessCurve(2, 1)
    with pytest.raises(SingularCurve):
        singular.add(O, Q)
    with pytest.raises(SingularCurve):
        LynessCurve(2, F(27, 2)).mul(Q, 2)


def test_q_multiples_examples():
    assert q_multiples(7, F(258, 7), 4) == ProjectivePoint(-7, 42, 1)
    for a, h in [(F(7), F(258, 7)), (F(3), F(5)), (F(-2, 3), F(1, 5))]:
        assert q_multiples(a, h, -2) == ProjectivePoint(0, -1, 1)
    c = LynessCurve(3, 5)
    acc = O
    for _ in range(7):
        acc = c.add(acc, Q)
    assert q_multiples(3, 5, 7) == acc
    with pytest.raises(FormulaPole):
        q_multiples(1, 5, 4)


def _curves(n, seed):
    rng = random.Random(seed)
    return [random_elliptic_curve(rng) for _ in range(n)], rng


def test_group_axioms():
    curves, rng = _curves(20, 11)
    for c, p0 in curves:
        pts = [c.add(c.mul(p0, rng.randint(-2, 2)), c.mul(Q, rng.randint(0, 5))) for _ in range(3)]
        a, b, d = pts
        assert c.add(a, O) == a
        assert c.add(a, b) == c.add(b, a)
        assert c.add(c.add(a, b), d) == c.add(a, c.add(b, d))
        assert c.add(a, c.neg(a)) == O
        assert c.neg(c.neg(a)) == a
        m, n = rng.randint(-4, 4), rng.randint(-4, 4)
        assert c.mul(a, m + n) == c.add(c.mul(a, m), c.mul(a, n))


def test_translation_by_q_is_lyness_step():
    curves, rng = _curves(5, 12)
    for c, p0 in curves:
        pts = [c.add(c.mul(p0, m), c.mul(Q, k)) for m in range(-5, 5) for k in range(10)]
        for p in pts:
            try:
                image = projective_step(c.a, p)
            except BasePoint:
                continue
            assert c.add(p, Q) == image


def test_q_multiples_match_mul_on_random_curves():
    curves, _ = _curves(40, 13)
    tested = 0
    for c, _ in curves:
        try:
            forms = {k: q_multiples(c.a, c.h, k) for k in range(-5, 8)}
        except FormulaPole:
            continue
        assert all(forms[k] == c.mul(Q, k) for k in forms)
        tested += 1
    assert tested >= 20


@pytest.mark.parametrize("n", [7, 8, 9, 10])
def test_h_for_period_orders(n):
    rng = random.Random(n)
    done = 0
    while done < 10:
        a = F(rng.randint(-30, 30), rng.randint(1, 7))
        try:
            c = LynessCurve(a, h_for_period(n, a))
        except FormulaPole:
            continue
        if a * (a - 1) == 0 or not c.is_elliptic:
            continue
        assert c.order_of(Q) == n
        done += 1


def test_h_for_period_examples():
    assert h_for_period(9, 7) == F(258, 7)
    assert h_for_period(10, F(21, 37)) == F(-296, 609)
    assert h_for_period(7, F(8, 5)) == F(3, 8)
    assert LynessCurve(F(8, 5), F(3, 8)).order_of(Q) == 7
    for n in (5, 6, 12):
        with pytest.raises(ValueError):
            h_for_period(n, 2)


def test_torsion9():
    pts = torsion9_points(7)
    assert ProjectivePoint(-7, 42, 1) in pts and ProjectivePoint(42, -7, 1) in pts
    assert len(set(pts)) == 9
    for p in pts:
        assert C7.contains(p)
        assert C7.mul(p, 9) == O
    assert pts == [C7.mul(Q, k) for k in range(1, 10)]


def test_nondegenerate_refusal():
    for a, h in [(F(2), F(0)), (F(2), F(1)), (F(2), F(27, 2))]:
        c = LynessCurve(a, h)
        assert not c.is_elliptic
        with pytest.raises(SingularCurve):
            c.neg(O)


def test_published_multiples_are_translates():
    # the published "3P" and "9P" for a = 7 are P-translates, not 3P and 9P
    three = ProjectivePoint.affine(F(260143588, 23256135), F(337001111, 246029869))
    nine = ProjectivePoint.affine(
        F(3147471926986755321149021, 226091071032606625830925),
        F(891522142852888213265718, 85174628288506877231975),
    )
    assert three == C7.add(C7.mul(P7, 3), C7.mul(Q, 4))
    assert nine == C7.add(C7.mul(P7, 5), C7.mul(Q, 8))
    assert C7.mul(P7, 3) != three and C7.mul(P7, 9) != nine

    def z(x, y):
        num = 2 * (6727 * x + 913 * y + 913) * (90272 * x - 415 * y - 2905)
        den = (5583410 * x**2 + 858451819 * x * y - 28403347 * y**2
               - 187465799 * x - 227226776 * y - 198823429)
        return None if den == 0 else num / den

    # the published rational map is the x-coordinate of translation by 2P + 4Q
    shift = C7.add(C7.mul(P7, 2), C7.mul(Q, 4))
    checked = 0
    for m in range(-3, 4):
        for k in range(9):
            pt = C7.add(C7.mul(P7, m), C7.mul(Q, k))
            image = C7.add(pt, shift)
            if pt.at_infinity or image.at_infinity or z(*pt.to_affine()) is None:
                continue
            assert z(*pt.to_affine()) == image.to_affine()[0]
            checked += 1
    assert checked > 40
