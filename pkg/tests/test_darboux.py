import pytest

from g2flags.exactfield import ALPHA
from g2flags.flow import DEGREE_ONE, TABLE1, XYZ_FIELD, DarbouxPair, completeness_sweep, darboux_search, darboux_verify
from g2flags.flow.darboux import MONOMIALS, degree_one_search, product_candidates, sweep_leading, sweep_report
from g2flags.flow.poly import X, Y, Z


@pytest.mark.parametrize("pair", TABLE1 + DEGREE_ONE, ids=lambda p: p.f.to_text())
def test_table_pairs_verify(pair):
    assert darboux_verify(pair)


def test_wrong_cofactor_fails():
    assert not darboux_verify(DarbouxPair(X ** 2, -X ** 2 - Y ** 2 / 2 + X / ALPHA))
    assert not darboux_verify(DarbouxPair(X + Y, -(X ** 2 + Y ** 2) / 4))


def test_degree_one_search():
    assert set(degree_one_search()) == set(DEGREE_ONE)
    assert darboux_search(1) == DEGREE_ONE


def test_degree_two_search_is_table():
    out = darboux_search(2)
    assert out[:6] == TABLE1
    assert out[6:] == DEGREE_ONE
    assert all(darboux_verify(p) for p in out)
    assert darboux_search(2) is out  # deterministic and cached


def test_completeness_sweep_finds_nothing_else():
    results = completeness_sweep()
    assert [r.leading for r in results] == list(MONOMIALS[:-1])
    found = {p.f for r in results for p in r.pairs}
    assert found == {p.f for p in TABLE1 + DEGREE_ONE}
    assert all(not r.families and not r.outside_field for r in results)


def test_products():
    prods = [p for p in product_candidates(DEGREE_ONE) if darboux_verify(p)]
    assert {p.f for p in prods} == {p.f for p in TABLE1}


def test_sweep_single_leading_monomial():
    res = sweep_leading((0, 0, 1))
    assert [p.f for p in res.pairs] == [Z]


def test_sweep_report_shape():
    rep = sweep_report()
    assert len(rep["sweep"]) == 9
    assert rep["sweep"][0]["leading"] == "x^2y^0z^0"


def test_bad_degree():
    with pytest.raises(ValueError):
        darboux_search(3)


def test_lie_derivative_of_z():
    assert XYZ_FIELD.lie_derivative(Z) == -Z * (X ** 2 + Y ** 2) / 4
