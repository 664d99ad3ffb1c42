"""Exact arithmetic: field axioms, signs, angle lattice, motion group."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinwheel.exact import (
    ANGLE_ZERO,
    Angle,
    ExactComplex,
    QRoot5,
    RigidMotion,
    Vec2,
    gamma_distance,
    motion_apply,
    motion_compose,
    motion_inverse,
    qr5_sqrt,
    rotation_matrix,
    unit_phase,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40
)
qroot5s = st.builds(QRoot5, rationals, rationals)


def test_basic_arithmetic():
    one, r5 = QRoot5(1), QRoot5(0, 1)
    assert one + r5 == QRoot5(1, 1)
    assert r5 * r5 == QRoot5(5)


def test_inverse_of_two_plus_sqrt5():
    x = QRoot5(2, 1)
    inv = QRoot5(1) / x
    # oracle: multiply back
    assert inv * x == QRoot5(1)
    assert inv == QRoot5(-2, 1)


@settings(max_examples=200)
@given(qroot5s, qroot5s, qroot5s)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x
    if x != QRoot5(0):
        assert (QRoot5(1) / x) * x == QRoot5(1)


def test_sign_examples():
    assert QRoot5(0, 0).sign() == 0
    assert QRoot5(-2, 1).sign() == 1  # sqrt5 > 2
    assert QRoot5(9, -4).sign() == 1  # 81 > 80


def test_sign_matches_high_precision_floats():
    rng = random.Random(7)
    mpmath.mp.dps = 50
    r5 = mpmath.sqrt(5)
    for _ in range(10_000):
        a = Fraction(rng.randint(-900, 900), rng.randint(1, 60))
        b = Fraction(rng.randint(-400, 400), rng.randint(1, 60))
        x = QRoot5(a, b)
        val = mpmath.mpf(a.numerator) / a.denominator + (
            mpmath.mpf(b.numerator) / b.denominator
        ) * r5
        expect = 0 if val == 0 else (1 if val > 0 else -1)
        assert x.sign() == expect


def test_qr5_sqrt():
    assert qr5_sqrt(QRoot5(5)) == QRoot5(0, 1)
    assert qr5_sqrt(QRoot5(4)) == QRoot5(2)
    assert qr5_sqrt(QRoot5(20)) == QRoot5(0, 2)
    assert qr5_sqrt(QRoot5(9, 4)) == QRoot5(2, 1)  # (2+sqrt5)^2 = 9+4sqrt5
    assert qr5_sqrt(QRoot5(2)) is None
    assert qr5_sqrt(QRoot5(-1)) is None


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QRoot5(1) / QRoot5(0)


def test_angle_addition():
    assert Angle(1, 0) + Angle(1, 0) == Angle(2, 0)
    assert Angle(1, 1) + Angle(-1, 3) == Angle(0, 0)


def test_rotation_matrix_values():
    ident = rotation_matrix(ANGLE_ZERO)
    assert ident == ((QRoot5(1), QRoot5(0)), (QRoot5(0), QRoot5(1)))
    quarter = rotation_matrix(Angle(0, 1))
    assert quarter == ((QRoot5(0), QRoot5(-1)), (QRoot5(1), QRoot5(0)))
    f = Fraction
    # cos(theta) = 2/sqrt5 = (2/5)sqrt5, sin(theta) = (1/5)sqrt5
    theta = rotation_matrix(Angle(1, 0))
    assert theta[0][0] == QRoot5(0, f(2, 5))
    assert theta[1][0] == QRoot5(0, f(1, 5))
    # oracle: float arctan check
    assert abs(float(theta[0][0]) - math.cos(math.atan2(1, 2))) < 1e-12
    assert abs(float(theta[1][0]) - math.sin(math.atan2(1, 2))) < 1e-12
    # (2+i)^2 = 3+4i, so R_{2theta} = [[3/5,-4/5],[4/5,3/5]]
    two = rotation_matrix(Angle(2, 0))
    assert two[0][0] == QRoot5(f(3, 5)) and two[1][0] == QRoot5(f(4, 5))


def test_rotation_matrix_orthogonal_and_multiplicative():
    rng = random.Random(3)
    for _ in range(50):
        a = Angle(rng.randint(-10, 10), rng.randint(0, 3))
        b = Angle(rng.randint(-10, 10), rng.randint(0, 3))
        ma, mb = rotation_matrix(a), rotation_matrix(b)
        mab = rotation_matrix(a + b)
        prod = [
            [sum((ma[i][t] * mb[t][j] for t in range(2)), QRoot5(0)) for j in range(2)]
            for i in range(2)
        ]
        assert [list(r) for r in mab] == prod
        # R^T R = I
        for i in range(2):
            for j in range(2):
                val = sum((ma[t][i] * ma[t][j] for t in range(2)), QRoot5(0))
                assert val == (QRoot5(1) if i == j else QRoot5(0))


def test_unit_phase():
    f = Fraction
    assert unit_phase(ANGLE_ZERO) == ExactComplex(QRoot5(1), QRoot5(0))
    assert unit_phase(Angle(0, 2)) == ExactComplex(QRoot5(-1), QRoot5(0))
    p = unit_phase(Angle(1, 0))
    assert p == ExactComplex(QRoot5(0, f(2, 5)), QRoot5(0, f(1, 5)))
    assert p.abs2() == QRoot5(1)


def test_unit_phase_multiplicative():
    rng = random.Random(11)
    for _ in range(100):
        a = Angle(rng.randint(-12, 12), rng.randint(0, 3))
        b = Angle(rng.randint(-12, 12), rng.randint(0, 3))
        assert unit_phase(a + b) == unit_phase(a) * unit_phase(b)


def test_angle_lattice_injective():
    seen = {}
    for k in range(-40, 41):
        for q in range(4):
            key = unit_phase(Angle(k, q))
            assert key not in seen, f"collision {Angle(k, q)} vs {seen.get(key)}"
            seen[key] = Angle(k, q)


def _random_motion(rng) -> RigidMotion:
    def q():
        return QRoot5(Fraction(rng.randint(-20, 20), rng.randint(1, 8)),
                      Fraction(rng.randint(-20, 20), rng.randint(1, 8)))

    return RigidMotion(Angle(rng.randint(-6, 6), rng.randint(0, 3)), Vec2(q(), q()))


def test_motion_group_axioms():
    rng = random.Random(5)
    ident = RigidMotion.identity()
    for _ in range(60):
        g, h, k = (_random_motion(rng) for _ in range(3))
        assert motion_compose(motion_compose(g, h), k) == motion_compose(g, motion_compose(h, k))
        assert motion_compose(g, motion_inverse(g)) == ident
        assert motion_compose(motion_inverse(g), g) == ident
        assert motion_compose(ident, g) == g
        p = Vec2(QRoot5(Fraction(1, 3)), QRoot5(0, Fraction(2, 7)))
        assert motion_apply(motion_compose(g, h), p) == motion_apply(g, motion_apply(h, p))


def test_quarter_turn_then_translate():
    g = RigidMotion(Angle(0, 1), Vec2(QRoot5(1), QRoot5(0)))
    out = motion_apply(g, Vec2(QRoot5(1), QRoot5(0)))
    assert out == Vec2(QRoot5(1), QRoot5(1))


def test_self_inverse_composition():
    g = RigidMotion(Angle(0, 1), Vec2(QRoot5(1), QRoot5(0)))
    gi = motion_inverse(g)
    assert motion_compose(gi, g) == RigidMotion.identity()


def test_gamma_distance():
    assert gamma_distance(RigidMotion.identity()) == 0.0
    trans = RigidMotion(ANGLE_ZERO, Vec2(QRoot5(3), QRoot5(4)))
    assert abs(gamma_distance(trans) - 5.0) < 1e-12
    quarter = RigidMotion(Angle(0, 1), Vec2(QRoot5(0), QRoot5(0)))
    assert abs(gamma_distance(quarter) - 2.0) < 1e-12


def test_qroot5_json_roundtrip():
    x = QRoot5(Fraction(-7, 3), Fraction(11, 15))
    assert QRoot5.from_json(x.to_json()) == x
