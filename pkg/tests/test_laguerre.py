from collections import Counter

import pytest

from cyclealt import laguerre as lg
from cyclealt.budgets import BudgetError
from cyclealt.egf import EgfSeries, egf_mul
from cyclealt.laguerre import BOUNDARY, Boundary, LaguerreDigraph, digraph_profile, enumerate_ld
from cyclealt.masterpolys import a_name, b_name, first_difference

from oracles import alternating_zero, digraph_paths_cycles, partial_injections

LAM = lg.LAMBDA_REGISTRY
lam = LAM.var("lam")


def as_ints(G):
    return tuple(0 if s is BOUNDARY else s for s in G.succ)


def alternating_inf(succ):
    n = len(succ)
    pred, _, _ = digraph_paths_cycles(succ)
    key = lambda v: n + 1 if v == 0 else v
    for i in range(1, n + 1):
        p, s = key(pred[i]), key(succ[i - 1])
        if s == i or p < i < s or p > i > s:
            return False
    return True


# -- enumeration against the partial-injection oracle -----------------------------


@pytest.mark.parametrize("n", range(0, 6))
def test_all_digraphs(n):
    want = set(partial_injections(n))
    got = [as_ints(G) for G in enumerate_ld(n)]
    assert len(got) == len(set(got)) and set(got) == want
    assert len(want) == [1, 2, 7, 34, 209, 1546][n]


@pytest.mark.parametrize("boundary,pred", [(Boundary.ZERO, alternating_zero), (Boundary.INF, alternating_inf)])
@pytest.mark.parametrize("n", range(0, 7))
def test_alternating_digraphs(n, boundary, pred):
    want = {s for s in partial_injections(n) if pred(s)}
    got = [as_ints(G) for G in enumerate_ld(n, alternating=True, boundary=boundary)]
    assert len(got) == len(set(got)) and set(got) == want
    assert len(want) == [1, 1, 2, 6, 20, 92, 448][n]


def test_path_count_filter_and_parity():
    for n in range(6):
        for k in range(n + 1):
            got = list(enumerate_ld(n, k=k, alternating=True))
            assert all(G.path_count == k for G in got)
            if (n + k) % 2:
                assert got == []


def test_small_alternating_cases():
    (G,) = enumerate_ld(2, k=0, alternating=True)
    assert G.succ == (2, 1)
    (H,) = enumerate_ld(1, k=1, alternating=True)
    assert H.role(1) == "valley"
    assert sum(1 for _ in enumerate_ld(3, k=1, alternating=True)) == 5


def test_invalid_digraphs_are_rejected():
    with pytest.raises(ValueError):
        LaguerreDigraph(2, (2, 2))
    with pytest.raises(ValueError):
        LaguerreDigraph(2, (3, BOUNDARY))
    with pytest.raises(ValueError):
        LaguerreDigraph(3, (BOUNDARY,))


def test_components_partition_vertices():
    for G in enumerate_ld(5):
        paths, cycles = G.components()
        verts = sorted(v for c in paths + cycles for v in c)
        assert verts == [1, 2, 3, 4, 5]
        _, k, cyc = digraph_paths_cycles(as_ints(G))
        assert (len(paths), len(cycles)) == (k, cyc) == (G.path_count, G.cycle_count)


def test_reversal_is_an_involution_swapping_conventions():
    for G in enumerate_ld(5, alternating=True, boundary=Boundary.INF):
        R = G.reversed()
        assert R.boundary is Boundary.ZERO and R.is_alternating()
        assert R.reversed() == G


# -- statistics --------------------------------------------------------------------


def test_two_cycle_profile():
    prof = digraph_profile(LaguerreDigraph(2, (2, 1)))
    assert (prof[1].role, prof[1].ulev) == ("valley", 0)
    assert (prof[2].role, prof[2].llev) == ("peak", 0)
    assert (prof.k, prof.cyc) == (0, 1)


def test_isolated_vertex_upper_level():
    assert digraph_profile(LaguerreDigraph(1, (BOUNDARY,)))[1].ulev == 0
    # an isolated top vertex sees every other path pass above it
    G = LaguerreDigraph(3, (BOUNDARY, BOUNDARY, BOUNDARY))
    assert digraph_profile(G)[3].ulev == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_level_identity_and_parity_laws(n):
    for G in enumerate_ld(n):
        prof = digraph_profile(G)
        for i, info in enumerate(prof.vertices, 1):
            if info.llev is not None:
                assert info.llev == info.lcross + info.lnest
        if G.is_alternating():
            for i, info in enumerate(prof.vertices, 1):
                if info.role == "valley":
                    assert info.ulev % 2 == (i - 1) % 2
                else:
                    assert info.llev % 2 == i % 2


# -- coefficient matrices ---------------------------------------------------------


def test_lambda_matrix_matches_oracle_census():
    m = lg.lambda_matrix(6)
    for n in range(7):
        want = Counter()
        for s in partial_injections(n):
            if alternating_zero(s):
                _, k, cyc = digraph_paths_cycles(s)
                want[(k, cyc)] += 1
        for k in range(n + 1):
            poly = sum((c * lam**cyc for (kk, cyc), c in want.items() if kk == k), LAM.zero())
            assert m[n, k] == poly, (n, k)


def test_matrix_entries():
    m = lg.lambda_matrix(6)
    assert m[4, 0] == 2 * lam + 3 * lam**2
    assert all(m[n, n] == 1 for n in range(7))


def test_full_matrix_row_sums():
    m = lg.coeffmat(5, "full", lg.unit_weights("full"))
    totals = [sum((m[n, k] for k in range(n + 1)), m[0, 0] * 0).substitute({"lam": m[0, 0]}) for n in range(6)]
    assert totals == [1, 2, 7, 34, 209, 1546]


def test_matrix_budget():
    with pytest.raises(BudgetError):
        lg.coeffmat(8, "full")
    with pytest.raises(ValueError):
        lg.coeffmat(2, "partial")


def test_printed_block_comparison_detects_a_changed_cell(monkeypatch):
    assert lg.verify_printed_matrix(5)["status"] == "ok"
    monkeypatch.setattr(lg, "PRINTED_ALTERNATING_BLOCK", lg.PRINTED_ALTERNATING_BLOCK.replace("8 + 6\\lambda", "8 + 7\\lambda"))
    rep = lg.verify_printed_matrix(5)
    assert rep["status"] == "fail" and rep["counterexample"]["row"] == 4


# -- second master polynomial -------------------------------------------------------


def test_qtilde_small_values():
    reg = lg.master_registry(2)
    a = lambda i: reg.var(a_name(i))
    b = lambda i, j: reg.var(b_name(i, j))
    L = reg.var("lam")
    assert lg.qtilde(2, 0, reg) == L * a(0) * b(0, 0)
    assert lg.qtilde(1, 1, reg) == a(0)
    rec = a(0) * lg.qtilde(2, 0, reg) + (L + 1) * (b(0, 1) + b(1, 0)) * lg.qtilde(2, 2, reg)
    assert lg.qtilde(3, 1, reg) == rec
    ones = {n: reg.one() for n in reg.names}
    assert lg.qtilde(3, 1, reg).substitute(ones) == 5


def test_small_theorem_checks():
    assert lg.verify_recurrence(4)["status"] == "ok"
    assert lg.verify_jr_theorem(4)["status"] == "ok"
    assert lg.verify_sr_corollary(3, 2)["status"] == "ok"
    assert lg.verify_gensr("GENSR9", 3, 2, n_perm=3)["status"] == "ok"
    assert lg.verify_gensr("GENSR_PQ", 3, 2, n_perm=3)["status"] == "ok"
    assert lg.verify_records_lemmas(5, 6, 5)["status"] == "ok"


# -- EGFs ---------------------------------------------------------------------------


def test_secant_power_and_tangent():
    sec = lg.egf_series("sec_pow", 6)
    assert sec[2] == lam and sec[4] == 3 * lam**2 + 2 * lam
    assert sec[6].substitute({"lam": LAM.one()}) == 61
    tan = lg.egf_series("tan", 7)
    assert [tan[n] for n in (1, 3, 5, 7)] == [1, 2, 16, 272]
    assert all(tan[n] == 0 for n in (0, 2, 4, 6))


def test_egf_columns_match_matrix():
    m = lg.lambda_matrix(7)
    for k in range(8):
        col = lg.egf_series("column", 7, k)
        assert [col[n] for n in range(k, 8)] == [m[n, k] for n in range(k, 8)]


def test_zeng_consequences():
    rep = lg.zeng_checks(5)
    assert rep["status"] == "ok" and rep["checks"] == ["power_lambda_2", "power_lambda_3", "riccati", "secant_power"]
    with pytest.raises(BudgetError):
        lg.zeng_checks(9)


def test_mutated_riccati_fails():
    reg = lg.ZENG_REGISTRY
    v = reg.var
    G = EgfSeries([reg.zero()] + [lg._linear_poly(n, reg) for n in range(1, 6)], reg)
    good = EgfSeries([v("zp")] + [reg.zero()] * 4, reg) + G.scale(v("zda") + v("zdd")) + egf_mul(G, G).scale(v("zv"))
    bad = EgfSeries([v("zp")] + [reg.zero()] * 4, reg) + G.scale(v("zda") + v("zdd")) + egf_mul(G, G).scale(v("zp"))
    lhs = G.derivative()
    assert all(first_difference(lhs[n], good[n]) is None for n in range(5))
    assert any(first_difference(lhs[n], bad[n]) is not None for n in range(5))
