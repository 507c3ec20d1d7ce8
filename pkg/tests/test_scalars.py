"""Field axioms and serialization for the exact scalar type.

sympy's symbolic arithmetic over Q(i, sqrt2) serves as the independent
oracle for the randomized algebra checks.
"""
import random
from fractions import Fraction

import pytest
import sympy

from dunkldirac.scalars import (ExactScalar, FloatScalar, IUNIT, ONE, SQRT2,
                                ZERO, as_fraction, format_fraction, rat,
                                sqrt_in_real_subfield)


def to_sympy(x: ExactScalar):
    a, b, c, d = x.a, x.b, x.c, x.d
    return (sympy.Rational(a.numerator, a.denominator)
            + sympy.Rational(b.numerator, b.denominator) * sympy.sqrt(2)
            + sympy.I * (sympy.Rational(c.numerator, c.denominator)
                         + sympy.Rational(d.numerator, d.denominator)
                         * sympy.sqrt(2)))


def eq_sympy(x: ExactScalar, expr) -> bool:
    return sympy.simplify(to_sympy(x) - expr) == 0


def random_scalar(rng, zero_ok=True) -> ExactScalar:
    while True:
        comps = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                 for _ in range(4)]
        x = ExactScalar(*comps)
        if zero_ok or not x.is_zero():
            return x


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == rat(2)


def test_inverse_of_one_plus_sqrt2():
    x = ONE + SQRT2
    inv = x.inverse()
    # expansion oracle: (1 + sqrt2)(-1 + sqrt2) = 1
    assert x * ExactScalar(-1, 1) == ONE
    assert inv == ExactScalar(-1, 1)


def test_conjugation_on_i_sqrt2():
    x = IUNIT * SQRT2
    assert x.conjugate() == ExactScalar(0, 0, 0, -1)
    assert x.conjugate() == -x


def test_surd_conjugation_is_field_automorphism():
    rng = random.Random(7)
    for _ in range(200):
        x, y = random_scalar(rng), random_scalar(rng)
        assert (x * y).surd_conjugate() == x.surd_conjugate() * y.surd_conjugate()
        assert (x + y).surd_conjugate() == x.surd_conjugate() + y.surd_conjugate()
        assert x.surd_conjugate().surd_conjugate() == x


def test_field_axioms_randomized():
    # 10^4 random nonzero elements: x * x^-1 == 1, plus ring identities
    rng = random.Random(20220214)
    for _ in range(10_000):
        x = random_scalar(rng, zero_ok=False)
        assert x * x.inverse() == ONE
    for _ in range(300):
        x, y, z = (random_scalar(rng) for _ in range(3))
        assert (x + y) * z == x * z + y * z
        assert x * (y * z) == (x * y) * z
        assert x + (-x) == ZERO


def test_arithmetic_matches_sympy_oracle():
    # division through sympy radsimp is slow; 12 draws keep this under 10s
    rng = random.Random(99)
    for _ in range(12):
        x, y = random_scalar(rng), random_scalar(rng)
        assert eq_sympy(x + y, to_sympy(x) + to_sympy(y))
        assert eq_sympy(x * y, to_sympy(x) * to_sympy(y))
        assert eq_sympy(x.conjugate(), sympy.conjugate(to_sympy(x)))
        if not y.is_zero():
            assert eq_sympy(x / y, to_sympy(x) / to_sympy(y))


def test_to_complex_within_ulps():
    import math
    assert ExactScalar(Fraction(1, 2)).to_complex() == 0.5
    assert SQRT2.to_complex() == math.sqrt(2)
    assert IUNIT.to_complex() == 1j
    x = ExactScalar(Fraction(1, 3), Fraction(-2, 7), 1, Fraction(5, 11))
    approx = x.to_complex()
    exact = complex(1 / 3 - 2 / 7 * math.sqrt(2), 1 + 5 / 11 * math.sqrt(2))
    assert abs(approx - exact) <= 4e-16 * max(1.0, abs(exact))


def test_serialization_roundtrip():
    rng = random.Random(5)
    for _ in range(100):
        x = random_scalar(rng)
        assert ExactScalar.deserialize(x.serialize()) == x
        assert ExactScalar.from_compact(x.compact()) == x
        assert ExactScalar.parse(str(x)) == x


def test_rational_string_rules():
    assert format_fraction(Fraction(3, 4)) == "3/4"
    assert format_fraction(Fraction(5)) == "5"
    assert as_fraction("-7/2") == Fraction(-7, 2)
    with pytest.raises(ValueError):
        as_fraction("1/0")
    with pytest.raises(ValueError):
        as_fraction("x")


def test_sign_real():
    assert (SQRT2 - 1).sign_real() == 1
    assert (rat(Fraction(3, 2)) - SQRT2).sign_real() == 1
    assert (SQRT2 - rat(Fraction(3, 2))).sign_real() == -1
    assert (rat(-2) + SQRT2).sign_real() == -1
    assert ZERO.sign_real() == 0
    with pytest.raises(ValueError):
        IUNIT.sign_real()


def test_sqrt_in_real_subfield():
    assert sqrt_in_real_subfield(rat(4)) == rat(2)
    assert sqrt_in_real_subfield(rat(2)) == SQRT2
    assert sqrt_in_real_subfield(rat(8)) == 2 * SQRT2
    assert sqrt_in_real_subfield(rat(Fraction(9, 4))) == rat(Fraction(3, 2))
    assert sqrt_in_real_subfield(rat(3)) is None
    # (1 + sqrt2)^2 = 3 + 2 sqrt2
    assert sqrt_in_real_subfield(ExactScalar(3, 2)) == ONE + SQRT2
    assert sqrt_in_real_subfield(rat(-1)) is None


def test_zero_denominator_rejected():
    with pytest.raises(ValueError):
        ExactScalar("1/0")


def test_float_scalar_basics():
    x = FloatScalar(1 + 2j)
    assert (x * x.inverse()).v == pytest.approx(1.0)
    assert x.conjugate().v == 1 - 2j
    assert FloatScalar(ExactScalar(1, 1)).v == pytest.approx(2.414213562373095)
    assert FloatScalar(0.0).is_zero()
