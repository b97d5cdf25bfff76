from collections import Counter

import pytest
from hypothesis import given, strategies as st

from cyclealt import permstat
from cyclealt.permstat import Permutation, enumerate_perms, lower_psnest, profile, profiles, summarize

from oracles import all_perms, crossing_stats, cycle_class, cycle_count, inversions, is_antirecord, is_ca, is_record

FIG1 = Permutation([9, 3, 7, 4, 6, 11, 2, 8, 10, 1, 5])


@pytest.mark.parametrize("N", range(1, 9))
def test_cycle_alternating_enumerator_matches_filter(N):
    want = {w for w in all_perms(N) if is_ca(w)}
    got = [tuple(p.word) for p in enumerate_perms("cycle_alternating", N)]
    assert len(got) == len(set(got)) and set(got) == want


@pytest.mark.parametrize("N", range(1, 9))
def test_alternating_cycle_enumerator_matches_filter(N):
    want = {w for w in all_perms(N) if is_ca(w) and cycle_count(w) == 1}
    got = [tuple(p.word) for p in enumerate_perms("alternating_cycles", N)]
    assert len(got) == len(set(got)) and set(got) == want


def test_small_counts():
    assert [tuple(p.word) for p in enumerate_perms("cycle_alternating", 2)] == [(2, 1)]
    assert sum(1 for _ in enumerate_perms("cycle_alternating", 4)) == 5
    assert sum(1 for _ in enumerate_perms("alternating_cycles", 6)) == 16
    assert sum(1 for _ in enumerate_perms("all", 5)) == 120


@pytest.mark.parametrize("N", range(1, 7))
def test_profiles_match_definitions(N):
    for w in all_perms(N):
        sigma = Permutation(w)
        for p in profiles(sigma):
            i = p.index
            assert p.cycle_class == cycle_class(w, i)
            rec, arec = is_record(w, i), is_antirecord(w, i)
            assert p.record_class == {(True, False): "erec", (False, True): "earec", (True, True): "rar", (False, False): "nrar"}[(rec, arec)]
            assert p.parity == ("even" if i % 2 == 0 else "odd")
            assert (p.ucross, p.unest, p.lcross, p.lnest, p.psnest) == crossing_stats(w, i), (w, i)


def test_transposition_profile():
    s = Permutation([2, 1])
    p1, p2 = profile(s, 1), profile(s, 2)
    assert (p1.cycle_class, p1.record_class, p1.ucross, p1.unest) == ("cval", "erec", 0, 0)
    assert (p2.cycle_class, p2.record_class, p2.lcross, p2.lnest) == ("cpeak", "earec", 0, 0)


def test_figure_permutation():
    assert FIG1.cycles() == [(1, 9, 10), (2, 3, 7), (4,), (5, 6, 11), (8,)]
    assert FIG1.cycle_count() == 5
    p = profile(FIG1, 4)
    assert p.cycle_class == "fix" and p.psnest == 2
    # upper and lower counts of a fixed point agree
    assert lower_psnest(FIG1, 4) == 2
    assert summarize(FIG1)["inv"] == inversions(FIG1.word) == FIG1.inversions()


def test_summaries():
    ident = summarize(Permutation([1, 2, 3]))
    assert (ident["fix"], ident["rar"], ident["inv"], ident["psnest"]) == (3, 3, 0, 0)
    t = summarize(Permutation([2, 1]))
    assert (t["inv"], t["cyc"]) == (1, 1)


@given(st.permutations(range(1, 8)))
def test_summary_is_sum_of_profiles(w):
    sigma = Permutation(w)
    s = summarize(sigma)
    per = Counter(p.cycle_class for p in profiles(sigma))
    for cls in ("cpeak", "cval", "cdrise", "cdfall", "fix"):
        assert s[cls] == per[cls]
    assert s["cyc"] == cycle_count(w)
    assert s["inv"] == inversions(w)


@given(st.permutations(range(1, 8)))
def test_psnest_upper_equals_lower(w):
    sigma = Permutation(w)
    for i in range(1, 8):
        if w[i - 1] == i:
            assert profile(sigma, i).psnest == lower_psnest(sigma, i)


@given(st.permutations(range(1, 8)))
def test_inverse_and_cycles(w):
    sigma = Permutation(w)
    inv = sigma.inverse()
    assert all(inv(sigma(i)) == i for i in range(1, 8))
    assert Permutation.from_cycles(sigma.cycles(), 7) == sigma


def test_parity_law_detects_non_alternating_input():
    assert permstat.parity_lemma_violation(Permutation([2, 1])) is None
    # (1 3 2) has a cycle double fall at 2; its cycle peak 3 breaks the parity law
    bad = permstat.parity_lemma_violation(Permutation([3, 1, 2]))
    assert bad == {"word": [3, 1, 2], "index": 3, "class": "cpeak"}


def test_key_lemma_suite_small():
    rep = permstat.verify_key_lemmas(3, 5)
    assert rep["status"] == "ok" and rep["counterexample"] is None


def test_reversal_symmetry_small():
    assert permstat.verify_reversal_symmetry(3)["status"] == "ok"


def test_record_cycle_census_total():
    c = permstat.record_cycle_census(6)
    assert sum(c.values()) == 61
