import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from octaplex.exactnum import (
    DUAL_UNIT,
    HALF,
    INV_SQRT2,
    OMEGA,
    ONE,
    QSqrt2,
    QUAT_I,
    QUAT_J,
    QUAT_K,
    QUAT_ONE,
    QuatEx,
    SQRT2,
    ZERO,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12
)
qsqrt2s = st.builds(QSqrt2, rationals, rationals)
quats = st.builds(QuatEx, qsqrt2s, qsqrt2s, qsqrt2s, qsqrt2s)


# ---------------------------------------------------------------------------
# field arithmetic


def test_sqrt2_times_sqrt2_is_two():
    assert SQRT2 * SQRT2 == QSqrt2(2)


def test_one_over_sqrt2_rationalizes():
    assert ONE / SQRT2 == QSqrt2(0, Fraction(1, 2))


def test_componentwise_add():
    assert HALF + INV_SQRT2 == QSqrt2(Fraction(1, 2), Fraction(1, 2))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@given(qsqrt2s, qsqrt2s, qsqrt2s)
def test_field_associativity_distributivity(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w


@given(qsqrt2s)
def test_field_inverses(u):
    assert u + (-u) == ZERO
    if not u.is_zero():
        assert u * (ONE / u) == ONE


@given(qsqrt2s, qsqrt2s)
def test_exact_order_matches_float_order(u, v):
    fu, fv = float(u), float(v)
    if abs(fu - fv) > 1e-6:
        assert (u < v) == (fu < fv)


def test_sign_mixed_cases():
    assert QSqrt2(3, -2).sign() > 0  # 3 > 2√2
    assert QSqrt2(Fraction(141, 100), -1).sign() < 0  # 1.41 < √2
    assert QSqrt2(-1, 1).sign() > 0
    assert QSqrt2().sign() == 0


def test_sqrt_of_two_and_of_rational_squares():
    assert QSqrt2(2).sqrt() == SQRT2
    assert QSqrt2(Fraction(9, 4)).sqrt() == QSqrt2(Fraction(3, 2))
    assert QSqrt2(Fraction(1, 2)).sqrt() == INV_SQRT2
    # (1 + √2)^2 = 3 + 2√2
    assert QSqrt2(3, 2).sqrt() == QSqrt2(1, 1)
    with pytest.raises(ValueError):
        QSqrt2(3).sqrt()
    with pytest.raises(ValueError):
        QSqrt2(-1).sqrt()


def test_serialization_round_trip():
    for v in (ZERO, ONE, HALF, SQRT2, INV_SQRT2, QSqrt2(Fraction(-7, 3), Fraction(5, 2))):
        assert QSqrt2.from_string(v.to_string()) == v
    with pytest.raises(ValueError):
        QSqrt2.from_string("1 + 2√2")


# ---------------------------------------------------------------------------
# quaternions


def test_ij_equals_k_and_noncommutativity():
    assert QUAT_I * QUAT_J == QUAT_K
    assert QUAT_J * QUAT_I == -QUAT_K
    assert QUAT_J * QUAT_K == QUAT_I
    assert QUAT_K * QUAT_I == QUAT_J


def test_unit_imaginary_squares_to_minus_one():
    for q in (QUAT_I, QuatEx(INV_SQRT2, INV_SQRT2, ZERO, ZERO)):
        assert q * q == -QUAT_ONE


def test_identity_and_omega_cube():
    assert QUAT_ONE * OMEGA == OMEGA
    assert OMEGA * QUAT_ONE == OMEGA
    assert OMEGA * OMEGA * OMEGA == -QUAT_ONE


def test_conjugation():
    assert QUAT_I.conj() == -QUAT_I
    assert OMEGA.conj() == QuatEx(-HALF, -HALF, -HALF, HALF)


@given(quats)
def test_conj_is_involution(q):
    assert q.conj().conj() == q


@given(quats, quats)
def test_conj_antihomomorphism(p, q):
    assert (p * q).conj() == q.conj() * p.conj()


def test_inverse():
    assert QUAT_I.inv() == -QUAT_I
    w_inv = OMEGA.inv()
    assert w_inv == OMEGA.conj()  # unit quaternion
    assert OMEGA * w_inv == QUAT_ONE
    assert (QuatEx.of(0, 0, 0, 2)).inv() == QuatEx.of(0, 0, 0, HALF)
    with pytest.raises(ZeroDivisionError):
        QuatEx.of(0, 0, 0, 0).inv()


@given(quats, quats)
def test_norm_is_multiplicative(p, q):
    assert (p * q).norm_sq() == p.norm_sq() * q.norm_sq()


@given(quats, quats, quats)
def test_quat_mul_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


def test_to_float():
    assert QUAT_ONE.to_float() == (0.0, 0.0, 0.0, 1.0)
    f = DUAL_UNIT.to_float()
    assert f[0] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert f[1] == f[2] == 0.0
    assert f[3] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert OMEGA.to_float() == (0.5, 0.5, 0.5, 0.5)


def test_lexicographic_ordering_is_total():
    pts = [QUAT_ONE, QUAT_I, QUAT_J, QUAT_K, OMEGA, -OMEGA, DUAL_UNIT]
    ordered = sorted(pts)
    assert sorted(ordered) == ordered
    assert len(set(pts)) == len(pts)
