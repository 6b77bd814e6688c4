from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from g2flags.exactfield import (
    ALPHA,
    BETA,
    ONE,
    QF13,
    SQRT13,
    ZERO,
    in_span,
    inverse,
    parse_qf13,
    rank,
    scalar_sign,
    scalar_to_float,
    solve,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
elements = st.builds(QF13, fractions, fractions)
nonzero = elements.filter(lambda a: not a.is_zero())


def test_alpha_beta_product():
    assert ALPHA * BETA == QF13(9)


def test_identity_and_simple_products():
    x = QF13(F(3, 7), F(-2, 5))
    assert x * 1 == x
    assert QF13(0, F(3, 26)) * SQRT13 == QF13(F(3, 2))
    assert SQRT13 * SQRT13 == 13


def test_signs():
    assert scalar_sign(ALPHA) == 1
    assert scalar_sign(ZERO) == 0
    assert scalar_sign(QF13(F(7, 2)) - SQRT13) == -1
    # close to zero but still decided exactly: 649^2 - 13*180^2 = 1
    assert scalar_sign(QF13(649, -180)) == 1
    assert scalar_sign(QF13(-649, 180)) == -1


def test_floats():
    assert scalar_to_float(ALPHA) == pytest.approx(1.6055512755, abs=1e-9)
    assert scalar_to_float(ZERO) == 0.0
    assert scalar_to_float(2 * BETA / 9) == pytest.approx(1.2456780, abs=1e-6)
    # cancellation-prone value keeps full relative accuracy
    v = scalar_to_float(QF13(649, -180))
    assert v == pytest.approx(1 / (649 + 180 * 13 ** 0.5), rel=1e-12)


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE
    assert a.norm() == (a * a.conjugate()).rat


@given(elements)
def test_sign_matches_float(a):
    f = scalar_to_float(a)
    if abs(f) > 1e-12:
        assert scalar_sign(a) == (1 if f > 0 else -1)


@given(elements)
def test_text_roundtrip(a):
    assert parse_qf13(a.to_text()) == a
    assert parse_qf13(str(a)) == a
    assert eval(repr(a)) == a


@given(elements)
def test_canonical_form_idempotent(a):
    b = QF13(a.rat, a.irr)
    assert b == a and hash(b) == hash(a)
    assert (b.rat, b.irr) == (a.rat, a.irr)


def test_equality_with_python_numbers():
    assert QF13(3) == 3
    assert QF13(F(1, 2)) == F(1, 2)
    assert QF13(1, 1) != 1


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/2", QF13(F(3, 2))),
        ("1+2*sqrt13", QF13(1, 2)),
        ("-sqrt13", QF13(0, -1)),
        ("sqrt(13)*3/4 - 1", QF13(-1, F(3, 4))),
        ("0", ZERO),
    ],
)
def test_parse(text, value):
    assert parse_qf13(text) == value


@pytest.mark.parametrize("text", ["", "x", "1 2", "sqrt11", "1++2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_qf13(text)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_sqrt():
    assert QF13(F(9, 4)).sqrt() == QF13(F(3, 2))
    assert QF13(F(13, 4)).sqrt() == QF13(0, F(1, 2))
    with pytest.raises(ValueError):
        QF13(2).sqrt()


def test_linear_algebra():
    m = [[QF13(1), SQRT13], [QF13(2), QF13(0, 2)]]
    assert rank(m) == 1
    m2 = [[QF13(1), SQRT13], [QF13(2), QF13(1)]]
    x = solve(m2, [QF13(1), QF13(0)])
    assert [sum((a * b for a, b in zip(row, x)), ZERO) for row in m2] == [QF13(1), QF13(0)]
    inv = inverse(m2)
    prod = [[sum((m2[i][k] * inv[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
    assert prod == [[ONE, ZERO], [ZERO, ONE]]
    assert in_span([QF13(2), QF13(0, 2)], [[QF13(1), SQRT13]])
    assert not in_span([QF13(1), QF13(0)], [[QF13(1), SQRT13]])
