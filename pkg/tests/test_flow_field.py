from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from g2flags.exactfield import ALPHA, BETA, QF13, SQRT13
from g2flags.flow import (
    XYZ_FIELD,
    DomainError,
    FlowState,
    Frame,
    Poly,
    main_eq,
    mu_field,
    mu_to_xyz,
    poly_field,
    xyz_to_mu,
)
from g2flags.flow.field import chain_rule_check
from g2flags.flow.poly import X, Y, Z, sympy_to_qf13
from g2flags.ricci import ricci_closed

pos = st.fractions(min_value=F(1, 9), max_value=30, max_denominator=9)


def test_poly_arithmetic_and_text():
    p = (X + Y) ** 2 - X * X
    assert p == 2 * X * Y + Y ** 2
    assert p.degree() == 2 and p.is_polynomial()
    assert (X ** -1).shift((1, 0, 0)) == Poly.const(1)
    assert p.diff(0) == 2 * Y
    assert (X * SQRT13 - Y / 2).to_text() == "sqrt13*x - 1/2*y"
    assert p((1, 2, 3)) == 8
    assert p((1.0, 2.0, 3.0)) == pytest.approx(8.0)
    with pytest.raises(ValueError):
        (X + Y) ** -1


def test_poly_compose_and_sympy_roundtrip():
    import sympy

    p = X ** 2 * Z - Y / ALPHA
    q = p.compose((X * Y, Y, Z))
    assert q == X ** 2 * Y ** 2 * Z - Y / ALPHA
    syms = sympy.symbols("x y z")
    assert Poly.from_sympy(p.to_sympy(syms), syms) == p
    assert sympy_to_qf13(sympy.Rational(1, 3) + 2 * sympy.sqrt(13)) == QF13(F(1, 3), 2)
    with pytest.raises(ValueError):
        sympy_to_qf13(sympy.sqrt(2))


def test_mu_field_examples():
    half = QF13(F(1, 2))
    got = mu_field((1, 1, 1))
    want = tuple(-2 * c for c in ricci_closed((1, 1, 1)).as_tuple())
    assert got == want
    assert got[0] == QF13(F(-1, 8))
    assert got[1] == -2 * (half - QF13(17, -4) / 544)


@given(pos, pos, pos)
def test_mu_field_is_minus_two_ricci(a, b, c):
    for variant in ("published", "corrected"):
        want = tuple(-2 * v for v in ricci_closed((a, b, c), variant).as_tuple())
        assert mu_field((a, b, c), variant) == want


@given(pos, pos, pos)
def test_frames_roundtrip_and_chain_rule(a, b, c):
    m = (QF13(a), QF13(b), QF13(c))
    assert xyz_to_mu(mu_to_xyz(m)).coords == m
    assert chain_rule_check(m)
    assert chain_rule_check(m, "corrected")


def test_frame_examples():
    assert mu_to_xyz((68, ALPHA, BETA)).coords == (1, 1, 1)
    assert mu_to_xyz((68, 1, 1)).coords == (ALPHA, BETA, 1)
    assert mu_to_xyz((17, ALPHA, BETA), "corrected").coords == (1, 1, 1)


def test_domain_errors():
    with pytest.raises(DomainError):
        mu_field((1, 0, 1))
    with pytest.raises(DomainError):
        mu_to_xyz((1.0, -1.0, 1.0))
    with pytest.raises(DomainError):
        main_eq((1, 1, 0))
    with pytest.raises(ValueError):
        mu_field((1, 1, 1), "other")


def test_poly_field_examples():
    q1 = (2 / ALPHA, QF13(0), QF13(0))
    assert poly_field(q1) == (0, 0, 0)
    assert poly_field((1, 1, 1)) == (QF13(F(-3, 4)) + 1 / ALPHA, QF13(F(-3, 4)) + 1 / BETA, QF13(F(-1, 2)))
    y, z = QF13(F(2, 3)), QF13(5)
    assert poly_field((0, y, z)) == (0, y * (y / BETA - y * y / 2), -z * y * y / 4)


@given(pos, pos, pos)
def test_time_change(a, b, c):
    p = (QF13(a), QF13(b), QF13(c))
    assert tuple(c * v for v, c in zip(main_eq(p), (p[2],) * 3)) == poly_field(p)


def test_coordinate_planes_are_invariant():
    for i in range(3):
        assert XYZ_FIELD.components[i].coeff((0, 0, 0)) == 0
        # every monomial of component i carries the i-th variable
        assert all(e[i] >= 1 for e in XYZ_FIELD.components[i].terms)


def test_flow_state():
    s = FlowState((1, 2.5, QF13(1, 1)), "XYZ")
    assert s.frame is Frame.XYZ and not s.is_exact()
    assert s.floats()[2] == pytest.approx(1 + 13 ** 0.5)
    with pytest.raises(ValueError):
        FlowState((1, 2))
    with pytest.raises(ValueError):
        Frame.parse("polar")
