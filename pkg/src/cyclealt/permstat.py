"""Permutations, their cycle/record classifications and crossing statistics.

Indices and values are 1-based.  Streams are produced in lexicographic order
of the one-line word.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .reports import make_report

__all__ = [
    "CYCLE_CLASSES",
    "RECORD_CLASSES",
    "CATEGORIES",
    "Permutation",
    "IndexProfile",
    "StatSummary",
    "InconsistentStatistics",
    "enumerate_perms",
    "profile",
    "profiles",
    "summarize",
    "record_cycle_census",
    "CENSUS_FIELDS",
]

CYCLE_CLASSES = ("cpeak", "cval", "cdrise", "cdfall", "fix")
RECORD_CLASSES = ("erec", "earec", "rar", "nrar")
CATEGORIES = (
    "ereccval",
    "ereccdrise",
    "eareccpeak",
    "eareccdfall",
    "rar",
    "nrcpeak",
    "nrcval",
    "nrcdrise",
    "nrcdfall",
    "nrfix",
)
PERM_CLASSES = ("all", "cycle_alternating", "alternating_cycles")


class InconsistentStatistics(RuntimeError):
    """Two independent evaluations of the same statistic disagree."""


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]
    inv: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, word: Sequence[int]):
        word = tuple(word)
        n = len(word)
        inv = [0] * n
        for i, v in enumerate(word, 1):
            if not 1 <= v <= n or inv[v - 1]:
                raise ValueError(f"{word!r} is not a permutation of [{n}]")
            inv[v - 1] = i
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "inv", tuple(inv))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], N: int) -> "Permutation":
        w = list(range(1, N + 1))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                w[a - 1] = b
        return cls(w)

    @property
    def N(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def inverse(self) -> "Permutation":
        return Permutation(self.inv)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.N + 1)
        out = []
        for s in range(1, self.N + 1):
            if not seen[s]:
                cyc = []
                j = s
                while not seen[j]:
                    seen[j] = True
                    cyc.append(j)
                    j = self(j)
                out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def inversions(self) -> int:
        w = self.word
        return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])

    def reversal_conjugate(self) -> "Permutation":
        """i -> N+1-sigma(N+1-i)."""
        n = self.N
        return Permutation([n + 1 - self(n + 1 - i) for i in range(1, n + 1)])

    def __str__(self) -> str:
        return " ".join(map(str, self.word))


@dataclass(frozen=True)
class IndexProfile:
    index: int
    cycle_class: str
    record_class: str
    parity: str
    ucross: int = 0
    unest: int = 0
    lcross: int = 0
    lnest: int = 0
    psnest: int = 0

    @property
    def category(self) -> str:
        return _category(self.cycle_class, self.record_class)

    @property
    def is_record(self) -> bool:
        return self.record_class in ("erec", "rar")

    @property
    def is_antirecord(self) -> bool:
        return self.record_class in ("earec", "rar")


def _category(cycle_class: str, record_class: str) -> str:
    if record_class == "rar":
        return "rar"
    if record_class == "erec":
        return "erec" + cycle_class
    if record_class == "earec":
        return "earec" + cycle_class
    return "nr" + cycle_class


def _cycle_class(w: Sequence[int], winv: Sequence[int], i: int) -> str:
    # w, winv are 1-based lists with a dummy slot 0
    s, p = w[i], winv[i]
    if s == i:
        return "fix"
    if p < i > s:
        return "cpeak"
    if p > i < s:
        return "cval"
    if p < i < s:
        return "cdrise"
    return "cdfall"


def _table(word: Sequence[int]) -> list[IndexProfile]:
    """Per-index profiles evaluated straight from the defining conditions."""
    n = len(word)
    w = (0,) + tuple(word)
    winv = [0] * (n + 1)
    for i in range(1, n + 1):
        winv[w[i]] = i
    out = []
    for j in range(1, n + 1):
        cc = _cycle_class(w, winv, j)
        rec = all(w[i] < w[j] for i in range(1, j))
        arec = all(w[i] > w[j] for i in range(j + 1, n + 1))
        rc = "rar" if rec and arec else "erec" if rec else "earec" if arec else "nrar"
        ucross = unest = lcross = lnest = psnest = 0
        sj = w[j]
        if sj > j:
            # quadruplets i<j<k<l with (k,l)=(s(i),s(j)) or (s(j),s(i))
            for i in range(1, j):
                si = w[i]
                if j < si < sj:
                    ucross += 1
                elif si > sj:
                    unest += 1
        elif sj < j:
            # quadruplets i<j<k<l at the lower vertex k=j
            for l in range(j + 1, n + 1):
                sl = w[l]
                if sj < sl < j:
                    lcross += 1
                elif sl < sj:
                    lnest += 1
        else:
            psnest = sum(1 for i in range(1, j) if w[i] > j)
        out.append(
            IndexProfile(j, cc, rc, "even" if j % 2 == 0 else "odd", ucross, unest, lcross, lnest, psnest)
        )
    return out


def profile(sigma: Permutation, i: int) -> IndexProfile:
    if not 1 <= i <= sigma.N:
        raise IndexError(f"index {i} outside [1, {sigma.N}]")
    return _table(sigma.word)[i - 1]


def profiles(sigma: Permutation) -> list[IndexProfile]:
    return _table(sigma.word)


def lower_psnest(sigma: Permutation, j: int) -> int:
    """#{i > j : sigma(i) < j}; agrees with psnest at fixed points."""
    return sum(1 for i in range(j + 1, sigma.N + 1) if sigma(i) < j)


_STAT_CLASSES = {
    "ucross": ("cval", "cdrise"),
    "unest": ("cval", "cdrise"),
    "lcross": ("cpeak", "cdfall"),
    "lnest": ("cpeak", "cdfall"),
}


@dataclass(frozen=True)
class StatSummary:
    """Aggregate counts keyed by name; merging is addition.

    Keys include every record-and-cycle category with and without a parity
    suffix (``eareccpeakeven``, ``eareccpeak``), each cycle and record class,
    the crossing/nesting totals refined by class and parity
    (``lcrosscpeakeven``), and ``cyc``, ``inv``, ``psnest``.
    """

    counts: Counter

    def __getitem__(self, key: str) -> int:
        return self.counts.get(key, 0)

    def __add__(self, other: "StatSummary") -> "StatSummary":
        return StatSummary(self.counts + other.counts)


def summarize(sigma: Permutation) -> StatSummary:
    table = _table(sigma.word)
    c: Counter = Counter()
    for p in table:
        cat = p.category
        c[cat] += 1
        c[cat + p.parity] += 1
        c[p.cycle_class] += 1
        if p.record_class != cat:
            c[p.record_class] += 1
        for stat, classes in _STAT_CLASSES.items():
            v = getattr(p, stat)
            if v:
                c[stat] += v
                if p.cycle_class in classes:
                    c[stat + p.cycle_class] += v
                    c[stat + p.cycle_class + p.parity] += v
        if p.psnest:
            c["psnest"] += p.psnest
    c["cyc"] = sigma.cycle_count()
    inv_pairs = sigma.inversions()
    inv_stats = (
        c["cval"] + c["cdrise"] + c["cdfall"] + c["ucross"] + c["lcross"]
        + 2 * (c["unest"] + c["lnest"] + c["psnest"])
    )
    if inv_pairs != inv_stats:
        raise InconsistentStatistics(f"inversions {inv_pairs} != statistic formula {inv_stats} for {sigma}")
    c["inv"] = inv_pairs
    return StatSummary(+c)


# -- enumeration -------------------------------------------------------------


def _ca_words(N: int, single_cycle: bool = False) -> Iterator[tuple[int, ...]]:
    """Cycle-alternating words of length N in lex order.

    Position i takes a value below i exactly when i already occurs as a value
    (then i is a cycle peak), otherwise a value above i (a cycle valley).
    With ``single_cycle`` a cycle may only close at the last position.
    """
    if N % 2 or N < 0:
        return
    if N == 0:
        if not single_cycle:
            yield ()
        return
    word = [0] * (N + 1)
    used = [False] * (N + 2)
    head = list(range(N + 1))  # head[e]: first vertex of the path ending at e
    tail = list(range(N + 1))  # tail[s]: last vertex of the path starting at s

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i > N:
            yield tuple(word[1:])
            return
        rng = range(1, i) if used[i] else range(i + 1, N + 1)
        for j in rng:
            if used[j]:
                continue
            s = head[i]
            closes = s == j
            if single_cycle and closes and i < N:
                continue
            used[j] = True
            word[i] = j
            if closes:
                yield from rec(i + 1)
            else:
                e = tail[j]
                old_ts, old_he = tail[s], head[e]
                tail[s], head[e] = e, s
                yield from rec(i + 1)
                tail[s], head[e] = old_ts, old_he
            used[j] = False

    yield from rec(1)


def enumerate_perms(cls: str, N: int) -> Iterator[Permutation]:
    """Stream a permutation class on [N]; alternating classes are empty for odd N."""
    if cls not in PERM_CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if N < 0:
        raise ValueError("N must be non-negative")
    if cls == "all":
        for w in itertools.permutations(range(1, N + 1)):
            yield Permutation(w)
        return
    for w in _ca_words(N, single_cycle=(cls == "alternating_cycles")):
        yield Permutation(w)


def is_cycle_alternating(sigma: Permutation) -> bool:
    return all(p.cycle_class in ("cpeak", "cval") for p in _table(sigma.word))


# -- fast census for record/cycle-only statistics ------------------------------

CENSUS_FIELDS = (
    "eareccpeakeven",
    "ereccvaleven",
    "nrcpeakeven",
    "nrcvaleven",
    "eareccpeakodd",
    "ereccvalodd",
    "nrcpeakodd",
    "nrcvalodd",
    "cyc",
)


def record_cycle_census(N: int, single_cycle: bool = False) -> Counter:
    """Multiset of record-and-cycle count vectors over cycle-alternating words.

    Keys follow :data:`CENSUS_FIELDS`.  Statistics are maintained incrementally
    along the lex-order backtracking, so N=12 is reachable.  A cycle valley is
    a record when it beats the prefix maximum; a cycle peak is an antirecord
    when it is below every value still unused.
    """
    out: Counter = Counter()
    if N % 2 or N < 0:
        return out
    if N == 0:
        if not single_cycle:
            out[(0,) * len(CENSUS_FIELDS)] += 1
        return out
    used = [False] * (N + 2)
    head = list(range(N + 1))
    tail = list(range(N + 1))
    counts = [0] * 9
    full = (1 << (N + 1)) - 2  # bit v set <=> value v unused

    def rec(i: int, free: int, pmax: int) -> None:
        if i > N:
            out[tuple(counts)] += 1
            return
        base = 0 if i % 2 == 0 else 4
        if used[i]:
            for j in range(1, i):
                if used[j]:
                    continue
                s = head[i]
                closes = s == j
                if single_cycle and closes and i < N:
                    continue
                rest = free & ~(1 << j)
                slot = base + (0 if (rest == 0 or (rest & -rest) > (1 << j)) else 2)
                counts[slot] += 1
                used[j] = True
                if closes:
                    counts[8] += 1
                    rec(i + 1, rest, pmax)
                    counts[8] -= 1
                else:
                    e = tail[j]
                    old_ts, old_he = tail[s], head[e]
                    tail[s], head[e] = e, s
                    rec(i + 1, rest, pmax)
                    tail[s], head[e] = old_ts, old_he
                used[j] = False
                counts[slot] -= 1
        else:
            for j in range(i + 1, N + 1):
                if used[j]:
                    continue
                s = head[i]
                closes = s == j
                if single_cycle and closes and i < N:
                    continue
                slot = base + (1 if j > pmax else 3)
                counts[slot] += 1
                used[j] = True
                rest = free & ~(1 << j)
                npmax = j if j > pmax else pmax
                if closes:
                    counts[8] += 1
                    rec(i + 1, rest, npmax)
                    counts[8] -= 1
                else:
                    e = tail[j]
                    old_ts, old_he = tail[s], head[e]
                    tail[s], head[e] = e, s
                    rec(i + 1, rest, npmax)
                    tail[s], head[e] = old_ts, old_he
                used[j] = False
                counts[slot] -= 1

    rec(1, full, 0)
    return out


# -- lemma suites ----------------------------------------------------------------


def _report(target: str, nmax: int, instances: int, counterexample, start: float) -> dict:
    return make_report(target, nmax, instances, counterexample, start)


def parity_lemma_violation(sigma: Permutation) -> dict | None:
    """Cycle valleys need ucross+unest = i-1 and cycle peaks lcross+lnest = i, mod 2."""
    for p in _table(sigma.word):
        if p.cycle_class == "cval" and (p.ucross + p.unest - (p.index - 1)) % 2:
            return {"word": list(sigma.word), "index": p.index, "class": "cval"}
        if p.cycle_class == "cpeak" and (p.lcross + p.lnest - p.index) % 2:
            return {"word": list(sigma.word), "index": p.index, "class": "cpeak"}
    return None


def record_nesting_violation(sigma: Permutation) -> dict | None:
    """Rising indices are records iff unest = 0; falling indices are antirecords iff lnest = 0."""
    for p in _table(sigma.word):
        if p.cycle_class in ("cval", "cdrise") and p.is_record != (p.unest == 0):
            return {"word": list(sigma.word), "index": p.index, "class": p.cycle_class}
        if p.cycle_class in ("cpeak", "cdfall") and p.is_antirecord != (p.lnest == 0):
            return {"word": list(sigma.word), "index": p.index, "class": p.cycle_class}
    return None


def verify_key_lemmas(n_max: int = 5, N_max: int = 7) -> dict:
    """Parity lemma on cycle-alternating permutations of [2n], n <= n_max; record-nesting
    lemma and the upper/lower psnest agreement on all of S_N, N <= N_max."""
    start = time.perf_counter()
    inst = 0
    for n in range(n_max + 1):
        for sigma in enumerate_perms("cycle_alternating", 2 * n):
            inst += 1
            bad = parity_lemma_violation(sigma)
            if bad:
                return _report("key-lemma", n_max, inst, {"lemma": "parity", **bad}, start)
    for N in range(N_max + 1):
        for sigma in enumerate_perms("all", N):
            inst += 1
            bad = record_nesting_violation(sigma)
            if bad:
                return _report("key-lemma", n_max, inst, {"lemma": "record-nesting", **bad}, start)
            table = _table(sigma.word)
            upper = sum(p.psnest for p in table)
            lower = sum(lower_psnest(sigma, p.index) for p in table if p.cycle_class == "fix")
            if upper != lower:
                return _report("key-lemma", n_max, inst, {"lemma": "psnest", "word": list(sigma.word)}, start)
    return _report("key-lemma", n_max, inst, None, start)


_REVERSAL_PAIRS = [
    ("eareccpeak", "ereccval"),
    ("nrcpeak", "nrcval"),
]


def verify_reversal_symmetry(n_max: int = 4) -> dict:
    """i -> 2n+1-i preserves cycle alternation and swaps the peak and valley record exponents."""
    start = time.perf_counter()
    inst = 0
    for n in range(n_max + 1):
        members = set(enumerate_perms("cycle_alternating", 2 * n))
        for sigma in sorted(members, key=lambda s: s.word):
            inst += 1
            rho = sigma.reversal_conjugate()
            if rho not in members:
                return _report("reversal", n_max, inst, {"word": list(sigma.word), "reason": "image not cycle-alternating"}, start)
            a, b = summarize(sigma), summarize(rho)
            for left, right in _REVERSAL_PAIRS:
                for par, other in (("even", "odd"), ("odd", "even")):
                    if a[left + par] != b[right + other] or a[right + par] != b[left + other]:
                        return _report("reversal", n_max, inst, {"word": list(sigma.word), "statistic": left + par}, start)
    return _report("reversal", n_max, inst, None, start)
