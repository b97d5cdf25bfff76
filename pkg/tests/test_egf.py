from math import factorial

from hypothesis import given, strategies as st

from cyclealt.egf import EgfSeries, cos_series, egf_exp, egf_inverse, egf_log, egf_mul, egf_pow, sin_series
from cyclealt.polyring import VarRegistry

REG = VarRegistry(("t",))
N = 7

series_one = st.lists(st.integers(-4, 4), min_size=N, max_size=N).map(lambda c: EgfSeries([1] + c, REG))
series_zero = st.lists(st.integers(-4, 4), min_size=N, max_size=N).map(lambda c: EgfSeries([0] + c, REG))


def test_sin_squared_plus_cos_squared():
    s, c = sin_series(N, REG), cos_series(N, REG)
    total = egf_mul(s, s) + egf_mul(c, c)
    assert list(total.coeffs) == [1] + [0] * N


def test_secant_and_tangent_numbers():
    sec = egf_inverse(cos_series(10, REG))
    tan = egf_mul(sin_series(10, REG), sec)
    assert [sec[n] for n in range(0, 11, 2)] == [1, 1, 5, 61, 1385, 50521]
    assert [tan[n] for n in range(1, 11, 2)] == [1, 2, 16, 272, 7936]


def test_exp_of_t_is_all_ones():
    assert list(egf_exp(EgfSeries([0, 1] + [0] * 5, REG)).coeffs) == [1] * 7


@given(series_one)
def test_inverse(f):
    assert list(egf_mul(f, egf_inverse(f)).coeffs) == [1] + [0] * N


@given(series_zero)
def test_log_exp_roundtrip(g):
    assert list(egf_log(egf_exp(g)).coeffs)[: N + 1] == list(g.coeffs)


@given(series_one, st.integers(0, 4))
def test_power_law(f, k):
    # f^k = exp(k log f)
    assert list(egf_exp(egf_log(f).scale(k)).coeffs)[: N + 1] == list(egf_pow(f, k).coeffs)


def test_integral_and_derivative():
    f = EgfSeries([3, 1, 4, 1, 5], REG)
    assert f.integral().derivative() == f
    assert f.divide_const(1) == f
    assert f.ogf_coeff(3) == (1, factorial(3))
