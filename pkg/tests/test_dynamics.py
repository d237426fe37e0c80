import random
from fractions import Fraction as F

import pytest

from lyness.dynamics import (
    ALLOWED_PERIODS,
    CoordinateGrowth,
    ForbiddenSet,
    NotOnAffineChart,
    detect_period,
    invariant_h,
    iterate,
    step,
    step_back,
)


def test_step_examples():
    assert step(7, (F(3, 2), F(5, 7))) == (F(5, 7), F(36, 7))
    assert step(1, (F(1), F(1))) == (1, 2)
    # a = 0 cycle 1, 2, 2, 1, 1/2, 1/2
    xs = [F(1), F(2)]
    for _ in range(6):
        xs.append(xs[-1] / xs[-2])
    assert xs[:6] == [1, 2, 2, 1, F(1, 2), F(1, 2)]
    assert step(0, (F(1), F(2))) == (xs[1], xs[2])


def test_step_back_examples():
    assert step_back(7, (F(5, 7), F(36, 7))) == (F(3, 2), F(5, 7))
    assert step_back(1, (F(1), F(2))) == (1, 1)
    p = (F(-2), F(3, 5))
    assert step_back(F(3, 2), step(F(3, 2), p)) == p


def test_forbidden():
    with pytest.raises(ForbiddenSet):
        step(2, (F(0), F(1)))
    with pytest.raises(ForbiddenSet):
        step_back(2, (F(1), F(0)))
    with pytest.raises(NotOnAffineChart):
        invariant_h(2, (F(0), F(1)))


def test_invariant_examples():
    a = F(7)
    x, y = F(3, 2), F(5, 7)
    direct = (x + 1) * (y + 1) * (x + y + a) / (x * y)
    assert invariant_h(a, (x, y)) == direct == F(258, 7) == (a - 1) * (a * a - a + 1) / a
    assert invariant_h(1, (1, 1)) == 12


def test_detect_period_examples():
    r = detect_period(7, (F(3, 2), F(5, 7)))
    assert r.status == "periodic" and r.period == 9
    assert [p.x for p in r.orbit] == [F(3, 2), F(5, 7), F(36, 7), 17, F(14, 3), F(35, 51), F(28, 17), F(63, 5), F(119, 10)]
    assert detect_period(F(3, 2), (F(-2), F(3, 5))).period == 10
    assert detect_period(F(12, 13), (F(-4, 9), F(-10, 13))).period == 12
    assert detect_period(1, (F(2), F(3))).period == 5


def test_detect_period_statuses():
    r = detect_period(2, (F(3), F(5)), max_steps=30)
    assert r.status == "aperiodic" and r.period is None and len(r.orbit) == 31
    r = detect_period(2, (F(0), F(1)))
    assert r.status == "forbidden" and r.forbidden_step == 0
    # x_2 = (1 - 1)/1 = 0, so the state (x_2, x_3) is forbidden
    r = detect_period(1, (F(1), F(-1)))
    assert r.status == "forbidden" and r.forbidden_step == 2
    with pytest.raises(ValueError):
        detect_period(1, (F(1), F(1)), max_steps=0)


def test_growth_guard(monkeypatch):
    with pytest.raises(CoordinateGrowth):
        detect_period(2, (F(3), F(5)), max_steps=60, max_bits=64)
    monkeypatch.setenv("LYNESS_MAX_BITS", "64")
    with pytest.raises(CoordinateGrowth):
        detect_period(2, (F(3), F(5)), max_steps=60)


def _rand(rng):
    return F(rng.randint(-20, 20), rng.randint(1, 9))


def test_invariant_conserved():
    rng = random.Random(7)
    done = 0
    while done < 50:
        a, x, y = _rand(rng), _rand(rng), _rand(rng)
        try:
            pts = iterate(a, (x, y), 30)
            hs = {invariant_h(a, p) for p in pts}
        except (ForbiddenSet, NotOnAffineChart):
            continue
        assert len(hs) == 1
        done += 1


def test_step_inverse():
    rng = random.Random(8)
    for _ in range(200):
        a, x, y = _rand(rng), _rand(rng), _rand(rng)
        if x != 0:
            assert step_back(a, step(a, (x, y))) == (x, y)
        if y != 0 and a + x != 0:
            assert step(a, step_back(a, (x, y))) == (x, y)


@pytest.mark.parametrize("a,n", [(F(1), 5), (F(0), 6)])
def test_globally_periodic(a, n):
    rng = random.Random(9)
    seen = 0
    while seen < 40:
        r = detect_period(a, (_rand(rng), _rand(rng)), max_steps=12)
        if r.status == "forbidden":
            continue
        assert r.is_periodic and n % r.period == 0
        seen += 1


def test_reported_periods_are_allowed():
    rng = random.Random(10)
    for _ in range(300):
        a = F(rng.randint(-4, 4), rng.randint(1, 3))
        r = detect_period(a, (_rand(rng), _rand(rng)), max_steps=13)
        if r.is_periodic:
            assert r.period in ALLOWED_PERIODS
            p = r.orbit[0]
            for _ in range(r.period):
                p = step(a, p)
            assert p == r.orbit[0]
