import pytest

from cyclealt import appendixlab as ap
from cyclealt.polyring import RatFunc


@pytest.fixture(scope="module")
def tables():
    return {v: ap.specialization_table(v, seed=0) for v in ("A1", "A2")}


def find(rows, bindings, coeff):
    (row,) = [r for r in rows if r.specialization == bindings and r.coefficient == coeff]
    return row


def test_leading_coefficients_three_variable():
    x, y, lam = ap.A1_REGISTRY.gens("x", "y", "lam")
    g0, b1, g1 = ap.appendix_jcoeffs("A1", 2)[:3]
    assert g0 == RatFunc(lam * x * y)
    assert b1 == RatFunc(lam * x * y * (lam * (1 + x * y) + x + y))
    assert not g1.is_polynomial()
    assert (g1 * RatFunc(lam * (1 + x * y) + x + y)).is_polynomial()
    for name in ("gamma0", "beta1", "gamma1"):
        assert ap.appendix_jcoeffs("A1", 2)[ap.COEFF_ORDER.index(name)] == ap.printed("A1", name)


def test_leading_coefficients_two_variable():
    x, y = ap.A2_REGISTRY.gens("x", "y")
    g0, b1, g1 = ap.appendix_jcoeffs("A2", 2)[:3]
    assert g0 == RatFunc(x + y)
    assert b1 == RatFunc((x + y) * (3 + x + y + x * y))
    assert g1 == ap.printed("A2", "gamma1")


def test_cubic_term():
    assert ap.appendix_series("A1", 3)[3] == ap.printed("A1", "P3").as_poly()


def test_every_verdict_matches(tables):
    for v, rows in tables.items():
        bad = [r.to_json_obj() for r in rows if not r.matches]
        assert bad == []


def test_selected_verdicts(tables):
    a1 = tables["A1"]
    x, y, lam = ap.A1_REGISTRY.gens("x", "y", "lam")
    assert find(a1, {"lam": 1}, "gamma1").quotient == 5 + 3 * x + 3 * y + 2 * x * y
    assert find(a1, {"x": "-y"}, "gamma1").quotient == lam * (3 - 2 * y**2) + 2
    assert find(a1, {"x": "-y"}, "beta2").verdict == "not_polynomial"
    assert find(a1, {}, "gamma1").verdict == "not_polynomial"
    for b in ({"x": -1}, {"y": -1}):
        assert find(a1, b, "gamma2").verdict == "not_polynomial"
    for b in ({"x": 1}, {"y": 1}):
        assert find(a1, b, "gamma2").verdict == "polynomial"


def test_non_polynomial_verdicts_carry_witnesses(tables):
    for rows in tables.values():
        for r in rows:
            if r.verdict == "not_polynomial":
                assert r.quotient is None and len(r.witnesses) == 3
            else:
                assert r.quotient is not None


def test_control_rows_are_not_polynomial(tables):
    for b in ({"lam": 2}, {"y": 2}, {"x": 3}):
        assert find(tables["A1"], b, "gamma1").verdict == "not_polynomial"


def test_table_is_reproducible():
    a = [r.to_json_obj() for r in ap.specialization_table("A2", seed=0)]
    b = [r.to_json_obj() for r in ap.specialization_table("A2", seed=0)]
    assert a == b


def test_negative_one():
    rep = ap.lambda_minus1_check(6)
    assert rep["status"] == "ok"
    with pytest.raises(ValueError):
        ap.lambda_minus1_check(7)


@pytest.mark.parametrize("variant", ["A1", "A2"])
def test_positive_specializations(variant):
    rep = ap.positive_specializations(variant, 5)
    assert rep["status"] == "ok", rep["counterexample"]


def test_lambda_zero_is_a_delta_series():
    rep = ap.positive_specializations("A1", 4)
    assert rep["results"]["lam=0"]["delta"] is None


def test_printed_gamma_for_two_variable_case_disagrees_with_data():
    status = ap.printed_gamma_status(5)
    rows = status["rows"]
    assert not status["printed_formula_holds"]
    assert (rows[0]["extracted"], rows[0]["printed"]) == ("5*x + 13", "5*x + 18")
    assert (rows[1]["extracted"], rows[1]["printed"]) == ("9*x + 41", "9*x + 50")


def test_symmetry():
    assert ap.symmetry_check(4) == {"A1": None, "A2": None}
