from fractions import Fraction as F

import pytest

from g2flags.exactfield import SQRT13, ZERO
from g2flags.flags import (
    W1,
    W2,
    Z1,
    Z3,
    Z2,
    EquivPair,
    FlagData,
    FlagId,
    Module,
    equivariance_check,
    flag_data,
    flag_reports,
    flag_to_json,
    kvec,
    kvec_text,
    module_invariance_check,
    same_span,
    tilde_t_check,
    vadd,
    vscale,
)
from g2flags.g2core import k_bracket, k_inner


@pytest.mark.parametrize("theta", list(FlagId))
def test_all_reports_pass(theta):
    for rep in flag_reports(theta):
        assert rep.passed, rep.violations


@pytest.mark.parametrize("theta, dims", [("empty", (1,) * 6), ("a1", (1, 2, 2)), ("a2", (1, 2, 2))])
def test_dims(theta, dims):
    assert flag_data(theta).dims == dims
    assert flag_data(theta).dim_m == sum(dims)


@pytest.mark.parametrize("text", ["empty", "∅", "alpha1", "α₂", "A2"])
def test_parse_aliases(text):
    assert FlagId.parse(text) in FlagId


def test_parse_rejects():
    with pytest.raises(ValueError):
        FlagId.parse("a3")


def test_isotropy():
    assert flag_data("empty").isotropy == ()
    assert flag_data("a1").isotropy == (W1,)
    iso = vadd(vscale(SQRT13, Z2), vscale(-2, W2))
    assert flag_data("a2").isotropy == (iso,)


def test_a2_modules_orthogonal_and_invariant():
    data = flag_data("a2")
    (k,) = data.isotropy
    for i, m in enumerate(data.modules):
        for j, n in enumerate(data.modules):
            if i != j:
                assert all(k_inner(u, v) == ZERO for u in m.generators for v in n.generators)
        for g in m.generators:
            br = k_bracket(k, g)
            assert same_span(list(m.generators) + [br], m.generators)


def test_a2_isotropy_kills_first_module():
    data = flag_data("a2")
    assert k_bracket(data.isotropy[0], data.modules[0].generators[0]) == (ZERO,) * 6


@pytest.mark.parametrize("theta", list(FlagId))
def test_basis_gram_is_identity_after_norms(theta):
    data = flag_data(theta)
    for i, u in enumerate(data.basis):
        for j, v in enumerate(data.basis):
            want = 1 if i == j else 0
            assert k_inner(u, v) / data.basis_norms[i] == want


def test_coords_roundtrip():
    data = flag_data("a1")
    v = data.to_vector(kvec(1, 2, F(1, 3), -4, 5))
    assert data.coords(v) == kvec(1, 2, F(1, 3), -4, 5)
    with pytest.raises(ValueError):
        data.coords(W1)


def test_tilde_t():
    assert tilde_t_check().passed


def test_broken_module_is_reported():
    good = flag_data("a1")
    bad = FlagData(good.theta, good.isotropy, (Module((W2,), (1,)),) + good.modules[1:], ())
    rep = module_invariance_check(bad)
    assert not rep.passed


def test_broken_equivalence_is_reported():
    good = flag_data("a1")
    pair = EquivPair(1, 2, (vscale(-1, Z2), vscale(-1, Z1)))  # wrong orientation
    rep = equivariance_check(FlagData(good.theta, good.isotropy, good.modules, (pair,)))
    assert not rep.passed


def test_text():
    assert kvec_text(vadd(vscale(SQRT13, W2), vscale(2, Z2))) == "sqrt13*W2 + 2*Z2"
    assert kvec_text((ZERO,) * 6) == "0"
    assert kvec_text(vscale(-1, Z3)) == "-Z3"


def test_json_shape():
    js = flag_to_json(flag_data("a2"))
    assert js["theta"] == "a2" and js["dims"] == [1, 2, 2]
    assert js["modules"][0]["norms2"] == ["17/1 + 0/1*sqrt13"]
