import pytest
from hypothesis import given, strategies as st

from cyclealt.cfkernel import (
    DepthError,
    JFractionSpec,
    SFractionSpec,
    contract,
    j_series,
    jr_matrix,
    jr_matrix_weighted,
    s_series,
    series_to_j,
    series_to_s,
    sr_matrices,
)
from cyclealt.polyring import RatFunc, VarRegistry

from oracles import motzkin_paths, path_weight

property_suite = pytest.mark.criterion(17, "property suites at fixed seeds")

DEPTH = 5
SYM = VarRegistry([f"a{i}" for i in range(1, 2 * DEPTH + 3)] + [f"g{i}" for i in range(DEPTH + 2)] + [f"b{i}" for i in range(1, DEPTH + 2)] + [f"r{i}" for i in range(DEPTH + 2)])
alpha = [SYM.var(f"a{i}") for i in range(1, 2 * DEPTH + 3)]  # alpha[i-1] = alpha_i
gamma = [SYM.var(f"g{i}") for i in range(DEPTH + 2)]
beta = [SYM.var(f"b{i}") for i in range(1, DEPTH + 2)]  # beta[i-1] = beta_i
rise = [SYM.var(f"r{i}") for i in range(DEPTH + 2)]
ONE = SYM.one()


def ints(seq):
    return [int(str(c)) if not isinstance(c, int) else c for c in seq]


# -- path-oracle equivalence -------------------------------------------------------


def oracle_j(n, k=0):
    return sum(
        (path_weight(h, lambda a: gamma[a], lambda a: beta[a - 1], ONE) for h in motzkin_paths(n, k)), SYM.zero()
    )


def oracle_dyck(length, end):
    total = SYM.zero()
    for h in motzkin_paths(length, end):
        if any(a == b for a, b in zip(h, h[1:])):
            continue
        total = total + path_weight(h, lambda a: SYM.zero(), lambda a: alpha[a - 1], ONE)
    return total


@property_suite
def test_j_series_matches_motzkin_paths():
    spec = JFractionSpec(gamma, beta)
    assert j_series(spec, DEPTH) == [oracle_j(n) for n in range(DEPTH + 1)]


@property_suite
def test_s_series_matches_dyck_paths():
    spec = SFractionSpec(alpha)
    assert s_series(spec, DEPTH) == [oracle_dyck(2 * n, 0) for n in range(DEPTH + 1)]


@property_suite
def test_jr_matrix_matches_partial_motzkin_paths():
    tri = jr_matrix(JFractionSpec(gamma, beta), DEPTH)
    for n in range(DEPTH + 1):
        for k in range(n + 1):
            assert tri[n, k] == oracle_j(n, k), (n, k)


@property_suite
def test_sr_matrices_match_partial_dyck_paths():
    first, second = sr_matrices(SFractionSpec(alpha), 4)
    for n in range(5):
        for k in range(n + 1):
            assert first[n, k] == oracle_dyck(2 * n, 2 * k), (n, k)
            assert second[n, k] == oracle_dyck(2 * n + 1, 2 * k + 1), (n, k)


@property_suite
def test_weighted_triangle_matches_paths_with_rises():
    tri = jr_matrix_weighted(rise, beta, gamma, 4)
    for n in range(5):
        for k in range(n + 1):
            want = SYM.zero()
            for h in motzkin_paths(n, k):
                w = path_weight(h, lambda a: gamma[a], lambda a: beta[a - 1], ONE)
                for a, b in zip(h, h[1:]):
                    if b > a:
                        w = w * rise[a]
                want = want + w
            assert tri[n, k] == want


def test_weighted_triangle_reduces_to_plain_triangle():
    plain = jr_matrix(JFractionSpec(gamma, beta), 4)
    unit = jr_matrix_weighted([ONE] * 5, beta, gamma, 4)
    for n in range(5):
        for k in range(n + 1):
            assert unit[n, k] == plain[n, k]


def test_weighted_triangle_column_factor():
    # rise weights factor out of column k once folded into the betas
    weighted = jr_matrix_weighted(rise, beta, gamma, 4)
    folded = jr_matrix(JFractionSpec(gamma, [rise[i - 1] * beta[i - 1] for i in range(1, 5)]), 4)
    for n in range(5):
        for k in range(n + 1):
            factor = ONE
            for i in range(k):
                factor = factor * rise[i]
            assert weighted[n, k] == factor * folded[n, k]


def test_sr_subdiagonal_is_sum_of_alphas():
    first, _ = sr_matrices(SFractionSpec(alpha), 4)
    for n in range(1, 5):
        assert first[n, n - 1] == sum(alpha[: 2 * n - 1], SYM.zero())


def test_zero_depth():
    assert jr_matrix(JFractionSpec([ONE], []), 0)[0, 0] == 1


# -- classical values --------------------------------------------------------------


def test_classical_s_fractions():
    assert s_series(SFractionSpec.from_function(lambda n: n * n, 6), 6) == [1, 1, 5, 61, 1385, 50521, 2702765]
    assert s_series(SFractionSpec.from_function(lambda n: (n + 1) // 2, 5), 5) == [1, 1, 2, 6, 24, 120]
    assert s_series(SFractionSpec.from_function(lambda n: n, 4), 4) == [1, 1, 3, 15, 105]
    dumont = SFractionSpec.from_function(lambda n: 1 if n % 2 else (n // 2) ** 2, 7)
    assert s_series(dumont, 7) == [1, 1, 2, 5, 17, 78, 461, 3417]
    tangent = SFractionSpec.from_function(lambda n: n * (n + 1), 4)
    assert s_series(tangent, 4) == [1, 2, 16, 272, 7936]


def test_classical_j_fractions():
    assert j_series(JFractionSpec([3] * 4, [0] * 4), 4) == [1, 3, 9, 27, 81]
    assert j_series(JFractionSpec([1, 2, 2, 2], [1, 1, 1]), 4) == [1, 1, 2, 5, 14]


def test_secant_power_polynomials_from_j_fraction():
    R = VarRegistry(("lam",))
    lam = R.var("lam")
    spec = JFractionSpec([R.zero()] * 4, [n * (lam + n - 1) for n in range(1, 5)])
    coeffs = j_series(spec, 4)
    assert coeffs[2] == lam and coeffs[4] == 3 * lam**2 + 2 * lam


def test_missing_coefficients_raise():
    with pytest.raises(DepthError):
        s_series(SFractionSpec([1, 1]), 5)


# -- contraction -------------------------------------------------------------------


def test_contraction_examples():
    c = contract(SFractionSpec([1] * 7), "even")
    assert c.gammas[:4] == (1, 2, 2, 2) and c.betas[:3] == (1, 1, 1)
    c = contract(SFractionSpec.from_function(lambda n: n, 9), "even")
    assert list(c.gammas[:4]) == [1] + [4 * n + 1 for n in range(1, 4)]
    assert list(c.betas[:4]) == [(2 * n - 1) * (2 * n) for n in range(1, 5)]


@property_suite
def test_contraction_preserves_series_symbolically():
    spec = SFractionSpec(alpha)
    assert j_series(contract(spec, "even"), DEPTH) == s_series(spec, DEPTH)


def test_odd_contraction_gives_shifted_series():
    spec = SFractionSpec(alpha)
    _, second = sr_matrices(spec, 4)
    assert j_series(contract(spec, "odd"), 4) == [second[n, 0] for n in range(5)]


# -- extraction roundtrips ---------------------------------------------------------

R1 = VarRegistry(("t",))
nz = st.integers(-6, 6).filter(bool)


@property_suite
@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4), st.lists(nz, min_size=3, max_size=3))
def test_j_roundtrip(gs, bs):
    spec = JFractionSpec([R1.const(g) for g in gs], [R1.const(b) for b in bs])
    back = series_to_j(j_series(spec, 7), 4)
    assert [g.as_poly() for g in back.gammas] == list(spec.gammas)
    assert [b.as_poly() for b in back.betas] == list(spec.betas)


@property_suite
@given(st.lists(nz, min_size=6, max_size=6))
def test_s_roundtrip(al):
    spec = SFractionSpec([R1.const(a) for a in al])
    back = series_to_s(s_series(spec, 6), 6)
    assert [a.as_poly() for a in back.alphas] == list(spec.alphas)


@property_suite
def test_symbolic_j_roundtrip():
    spec = JFractionSpec(gamma[:3], beta[:2])
    back = series_to_j(j_series(spec, 5), 3)
    assert list(back.gammas) == [RatFunc(g) for g in gamma[:3]]
    assert list(back.betas) == [RatFunc(b) for b in beta[:2]]


def test_geometric_series_gives_short_spec():
    back = series_to_j([R1.const(c) for c in (1, 2, 4, 8)])
    assert list(back.gammas) == [RatFunc(R1.const(2))] and list(back.betas) == []
