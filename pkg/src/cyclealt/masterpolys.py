"""Generating polynomials of cycle-alternating permutations and alternating cycles.

Each family is a :class:`WeightScheme`: a registry plus a per-index rule that
turns an :class:`~cyclealt.permstat.IndexProfile` into a monomial, optionally
times ``lam**cyc``.  :func:`family_poly` sums the weights by brute force and
:func:`theorem_alphas` gives the closed-form S-fraction coefficients, so
:func:`verify_family` can compare the two.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

from . import permstat
from .cfkernel import SFractionSpec, s_series
from .polyring import MultiPoly, VarRegistry, glex_key
from .reports import make_report

__all__ = [
    "FAMILIES",
    "NoClosedForm",
    "WeightScheme",
    "FamilyResult",
    "scheme",
    "family_poly",
    "theorem_alphas",
    "theorem_spec",
    "specialization",
    "series_prefactor",
    "verify_family",
    "pq_integer",
    "Q8_NAMES",
    "PQ_NAMES",
]

Q4_NAMES = ("x", "y", "u", "v")
Q8_NAMES = ("xe", "ye", "ue", "ve", "xo", "yo", "uo", "vo")
PQ_NAMES = ("p_m1", "p_m2", "p_p1", "p_p2", "q_m1", "q_m2", "q_p1", "q_p2")
LAM = "lam"

FAMILIES = (
    "Q4",
    "Q8",
    "Q16",
    "MASTER1",
    "QHAT9",
    "QHAT17",
    "MASTER2",
    "QC8",
    "QC16",
    "MASTERC",
    "PXY_LAMBDA",
    "BIANE_Q",
)

# families whose weights only need records, cycle classes and cycle counts
_CENSUS_FAMILIES = {"Q4", "Q8", "QHAT9", "QC8", "PXY_LAMBDA"}
_ALT_CYCLE_FAMILIES = {"QC8", "QC16", "MASTERC"}
# every index contributes exactly one of the record-type variables
_HOMOGENEOUS = {"Q4", "Q8", "Q16", "QHAT9", "QHAT17", "QC8", "QC16"}


class NoClosedForm(LookupError):
    """The family has no published polynomial S-fraction in this form."""


def a_name(*idx: int) -> str:
    return "a[" + ",".join(map(str, idx)) + "]"


def b_name(*idx: int) -> str:
    return "b[" + ",".join(map(str, idx)) + "]"


def _pairs(cap: int) -> list[tuple[int, int]]:
    return [(l, s - l) for s in range(cap + 1) for l in range(s + 1)]


def family_registry(family: str, cap: int = 0) -> VarRegistry:
    """Variables of a family; ``cap`` bounds the index sum of a/b families."""
    if family == "Q4":
        return VarRegistry(Q4_NAMES)
    if family in ("Q8", "QC8"):
        return VarRegistry(Q8_NAMES)
    if family in ("Q16", "QC16"):
        return VarRegistry(Q8_NAMES + PQ_NAMES)
    if family == "QHAT9":
        return VarRegistry(Q8_NAMES + (LAM,))
    if family == "QHAT17":
        return VarRegistry(Q8_NAMES + PQ_NAMES + (LAM,))
    if family == "PXY_LAMBDA":
        return VarRegistry(("x", "y", LAM))
    if family == "BIANE_Q":
        return VarRegistry(("q",))
    bs = [b_name(l, m) for l, m in _pairs(cap)]
    if family == "MASTER1":
        return VarRegistry([a_name(l, m) for l, m in _pairs(cap)] + bs)
    if family == "MASTER2":
        return VarRegistry([LAM] + [a_name(l) for l in range(cap + 1)] + bs)
    if family == "MASTERC":
        return VarRegistry([a_name(l) for l in range(cap + 1)] + bs)
    raise ValueError(f"unknown family {family!r}")


Rule = Callable[[permstat.IndexProfile], Iterable[tuple[str, int]]]


def _q8_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    s = "e" if p.parity == "even" else "o"
    if p.cycle_class == "cpeak":
        yield ("x" if p.record_class == "earec" else "u") + s, 1
    elif p.cycle_class == "cval":
        yield ("y" if p.record_class == "erec" else "v") + s, 1


def _q4_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    for name, k in _q8_rule(p):
        yield name[0], k


def _pq_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    yield from _q8_rule(p)
    even = p.parity == "even"
    if p.cycle_class == "cpeak":
        tag = "m1" if even else "m2"
        yield "p_" + tag, p.lcross
        yield "q_" + tag, p.lnest
    elif p.cycle_class == "cval":
        tag = "p2" if even else "p1"
        yield "p_" + tag, p.ucross
        yield "q_" + tag, p.unest


def _master1_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    if p.cycle_class == "cval":
        yield a_name(p.ucross, p.unest), 1
    elif p.cycle_class == "cpeak":
        yield b_name(p.lcross, p.lnest), 1


def _master2_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    if p.cycle_class == "cval":
        yield a_name(p.ucross + p.unest), 1
    elif p.cycle_class == "cpeak":
        yield b_name(p.lcross, p.lnest), 1


def _pxy_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    if p.cycle_class == "cpeak" and p.record_class == "earec":
        yield "x", 1
    elif p.cycle_class == "cval" and p.record_class == "erec":
        yield "y", 1


def _no_rule(p: permstat.IndexProfile) -> Iterable[tuple[str, int]]:
    return ()


@dataclass(frozen=True)
class WeightScheme:
    family: str
    registry: VarRegistry
    rule: Rule
    lam: str | None
    perm_class: str
    global_stat: str | None = None  # summary statistic carried as a power of the sole variable

    def weight_exponent(self, sigma: permstat.Permutation, table=None) -> tuple[int, ...]:
        reg = self.registry
        e = [0] * len(reg)
        table = table if table is not None else permstat.profiles(sigma)
        for p in table:
            for name, k in self.rule(p):
                if k:
                    e[reg.index(name)] += k
        if self.lam is not None:
            e[reg.index(self.lam)] += sigma.cycle_count()
        if self.global_stat == "inv":
            e[0] += sigma.inversions()
        return tuple(e)


def scheme(family: str, cap: int = 0) -> WeightScheme:
    reg = family_registry(family, cap)
    cls = "alternating_cycles" if family in _ALT_CYCLE_FAMILIES else "cycle_alternating"
    rules: dict[str, tuple[Rule, str | None]] = {
        "Q4": (_q4_rule, None),
        "Q8": (_q8_rule, None),
        "Q16": (_pq_rule, None),
        "MASTER1": (_master1_rule, None),
        "QHAT9": (_q8_rule, LAM),
        "QHAT17": (_pq_rule, LAM),
        "MASTER2": (_master2_rule, LAM),
        "QC8": (_q8_rule, None),
        "QC16": (_pq_rule, None),
        "MASTERC": (_master2_rule, None),
        "PXY_LAMBDA": (_pxy_rule, LAM),
        "BIANE_Q": (_no_rule, None),
    }
    rule, lam = rules[family]
    return WeightScheme(family, reg, rule, lam, cls, "inv" if family == "BIANE_Q" else None)


@dataclass(frozen=True)
class FamilyResult:
    n: int
    poly: MultiPoly
    perm_class: str
    instances: int

    def homogeneity_names(self) -> tuple[str, ...]:
        excluded = set(PQ_NAMES) | {LAM}
        return tuple(v for v in self.poly.registry.names if v not in excluded)

    def is_homogeneous(self) -> bool:
        """One record-type variable per index, so total degree 2n outside lam and the p, q families."""
        idx = [self.poly.registry.index(v) for v in self.homogeneity_names()]
        return all(sum(e[i] for i in idx) == 2 * self.n for e in self.poly.terms)


def _census_exponent(family: str, reg: VarRegistry, key: tuple[int, ...]) -> tuple[int, ...]:
    c = dict(zip(permstat.CENSUS_FIELDS, key))
    e = [0] * len(reg)

    def put(name: str, k: int) -> None:
        if k:
            e[reg.index(name)] += k

    if family == "PXY_LAMBDA":
        put("x", c["eareccpeakeven"] + c["eareccpeakodd"])
        put("y", c["ereccvaleven"] + c["ereccvalodd"])
    elif family == "Q4":
        put("x", c["eareccpeakeven"] + c["eareccpeakodd"])
        put("y", c["ereccvaleven"] + c["ereccvalodd"])
        put("u", c["nrcpeakeven"] + c["nrcpeakodd"])
        put("v", c["nrcvaleven"] + c["nrcvalodd"])
    else:
        for s, par in (("e", "even"), ("o", "odd")):
            put("x" + s, c["eareccpeak" + par])
            put("y" + s, c["ereccval" + par])
            put("u" + s, c["nrcpeak" + par])
            put("v" + s, c["nrcval" + par])
    if family in ("QHAT9", "PXY_LAMBDA"):
        put(LAM, c["cyc"])
    return tuple(e)


def family_poly(sch: WeightScheme | str, n: int, route: str = "auto") -> FamilyResult:
    """Brute-force generating polynomial over the family's class of 2n-permutations.

    ``route='profile'`` evaluates every statistic per index from its definition;
    ``route='census'`` uses the incremental record/cycle census (only for
    families that need nothing else); ``auto`` picks the census when possible.
    """
    if isinstance(sch, str):
        sch = scheme(sch, max(n, 1))
    single = sch.perm_class == "alternating_cycles"
    if route == "auto":
        route = "census" if sch.family in _CENSUS_FAMILIES else "profile"
    acc: Counter = Counter()
    if route == "census":
        if sch.family not in _CENSUS_FAMILIES:
            raise ValueError(f"family {sch.family} needs crossing statistics; use route='profile'")
        census = permstat.record_cycle_census(2 * n, single)
        for key, mult in census.items():
            acc[_census_exponent(sch.family, sch.registry, key)] += mult
    elif route == "profile":
        for sigma in permstat.enumerate_perms(sch.perm_class, 2 * n):
            acc[sch.weight_exponent(sigma)] += 1
    else:
        raise ValueError(f"unknown route {route!r}")
    return FamilyResult(n, MultiPoly(sch.registry, acc), sch.perm_class, sum(acc.values()))


# -- closed forms ---------------------------------------------------------------


def pq_integer(n: int, p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """[n]_{p,q} = sum_{j<n} p^j q^(n-1-j), by the explicit sum."""
    total = p.registry.zero()
    for j in range(n):
        total = total + p**j * q ** (n - 1 - j)
    return total


def specialization(family: str, reg: VarRegistry | None = None) -> dict[str, MultiPoly]:
    """Variable bindings under which the family's S-fraction theorem holds."""
    reg = reg or family_registry(family)
    if family in ("QHAT9", "QC8"):
        return {"ve": reg.var("ye"), "vo": reg.var("yo")}
    if family in ("QHAT17", "QC16"):
        return {"ve": reg.var("ye"), "vo": reg.var("yo"), "q_p1": reg.var("p_p1"), "q_p2": reg.var("p_p2")}
    return {}


def _alpha_n(family: str, n: int, reg: VarRegistry, specialized: bool) -> MultiPoly:
    v = reg.var
    c = reg.const
    if family == "Q4":
        return (v("x") + c(n - 1) * v("u")) * (v("y") + c(n - 1) * v("v"))
    if family == "BIANE_Q":
        q = v("q")
        return q ** (2 * n - 1) * pq_integer(n, reg.one(), q) ** 2
    if family == "MASTER1":
        return sum((v(a_name(l, n - 1 - l)) for l in range(n)), reg.zero()) * sum(
            (v(b_name(l, n - 1 - l)) for l in range(n)), reg.zero()
        )
    if family == "MASTER2":
        return (v(LAM) + c(n - 1)) * v(a_name(n - 1)) * sum((v(b_name(l, n - 1 - l)) for l in range(n)), reg.zero())
    if family == "MASTERC":
        return c(n) * v(a_name(n)) * sum((v(b_name(l, n - l)) for l in range(n + 1)), reg.zero())
    odd = n % 2 == 1
    m = n - 1  # the index offset 2k-2 (odd n) or 2k-1 (even n)
    if family == "Q8":
        if odd:
            return (v("xe") + c(m) * v("ue")) * (v("yo") + c(m) * v("vo"))
        return (v("xo") + c(m) * v("uo")) * (v("ye") + c(m) * v("ve"))
    if family == "Q16":
        if odd:
            x = v("p_m1") ** m * v("xe") + v("q_m1") * pq_integer(m, v("p_m1"), v("q_m1")) * v("ue")
            y = v("p_p1") ** m * v("yo") + v("q_p1") * pq_integer(m, v("p_p1"), v("q_p1")) * v("vo")
        else:
            x = v("p_m2") ** m * v("xo") + v("q_m2") * pq_integer(m, v("p_m2"), v("q_m2")) * v("uo")
            y = v("p_p2") ** m * v("ye") + v("q_p2") * pq_integer(m, v("p_p2"), v("q_p2")) * v("ve")
        return x * y
    if family in ("QHAT9", "QHAT17", "PXY_LAMBDA") and not specialized:
        raise NoClosedForm(f"{family} has no polynomial S-fraction without specialization")
    lam = v(LAM) if LAM in reg else None
    if family == "QHAT9":
        if odd:
            return (lam + c(m)) * (v("xe") + c(m) * v("ue")) * v("yo")
        return (lam + c(m)) * (v("xo") + c(m) * v("uo")) * v("ye")
    if family == "QHAT17":
        if odd:
            x = v("p_m1") ** m * v("xe") + v("q_m1") * pq_integer(m, v("p_m1"), v("q_m1")) * v("ue")
            return (lam + c(m)) * x * v("p_p1") ** m * v("yo")
        x = v("p_m2") ** m * v("xo") + v("q_m2") * pq_integer(m, v("p_m2"), v("q_m2")) * v("uo")
        return (lam + c(m)) * x * v("p_p2") ** m * v("ye")
    if family in ("QC8", "QC16"):
        if not specialized:
            raise NoClosedForm(f"{family} needs its specialization for a closed form")
        if family == "QC8":
            if odd:
                return c(n) * (v("xo") + c(n) * v("uo")) * v("ye")
            return c(n) * (v("xe") + c(n) * v("ue")) * v("yo")
        if odd:
            x = v("p_m2") ** n * v("xo") + v("q_m2") * pq_integer(n, v("p_m2"), v("q_m2")) * v("uo")
            return c(n) * x * v("p_p2") ** n * v("ye")
        x = v("p_m1") ** n * v("xe") + v("q_m1") * pq_integer(n, v("p_m1"), v("q_m1")) * v("ue")
        return c(n) * x * v("p_p1") ** n * v("yo")
    raise NoClosedForm(f"no closed form recorded for {family}")


def theorem_alphas(
    family: str, k: int, *, specialized: bool = False, registry: VarRegistry | None = None
) -> tuple[MultiPoly, MultiPoly]:
    """(alpha_{2k-1}, alpha_{2k}) of the family's S-fraction.

    For the alternating-cycle families these are the coefficients of the
    shifted series sum_n Q_{n+1} t^n divided by :func:`series_prefactor`.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    reg = registry or family_registry(family, 2 * k)
    return _alpha_n(family, 2 * k - 1, reg, specialized), _alpha_n(family, 2 * k, reg, specialized)


def theorem_spec(family: str, length: int, reg: VarRegistry, specialized: bool = False) -> SFractionSpec:
    return SFractionSpec([_alpha_n(family, i, reg, specialized) for i in range(1, length + 1)])


def series_prefactor(family: str, reg: VarRegistry) -> MultiPoly:
    if family in ("QC8", "QC16"):
        return reg.var("xe") * reg.var("yo")
    if family == "MASTERC":
        return reg.var(a_name(0)) * reg.var(b_name(0, 0))
    return reg.one()


def _needs_specialization(family: str) -> bool:
    return family in ("QHAT9", "QHAT17", "QC8", "QC16")


def first_difference(lhs: MultiPoly, rhs: MultiPoly) -> dict | None:
    """The graded-lex smallest monomial where two polynomials differ."""
    diff = lhs - rhs
    if diff.is_zero():
        return None
    e = min(diff.terms, key=glex_key)
    reg = lhs.registry
    return {
        "monomial": {n: k for n, k in zip(reg.names, e) if k},
        "brute_force": str(lhs.terms.get(e, 0)),
        "closed_form": str(rhs.terms.get(e, 0)),
    }


def verify_family(family: str, n_max: int, route: str = "auto") -> dict:
    """Compare brute-force family polynomials against the closed-form S-fraction."""
    start = time.perf_counter()
    alt = family in _ALT_CYCLE_FAMILIES
    cap = n_max if alt else max(n_max - 1, 0)
    sch = scheme(family, cap)
    reg = sch.registry
    spec = theorem_spec(family, max(n_max, 1), reg, specialized=_needs_specialization(family))
    series = s_series(spec, n_max)
    binding = specialization(family, reg)
    pref = series_prefactor(family, reg)
    instances = 0
    counterexample = None
    checked = []
    for n in range(n_max + 1):
        size = n + 1 if alt else n
        res = family_poly(sch, size, route=route)
        instances += res.instances
        brute = res.poly.substitute(binding) if binding else res.poly
        expected = pref * series[n]
        diff = first_difference(brute, expected)
        if diff is None and family in _HOMOGENEOUS and not res.is_homogeneous():
            diff = {"reason": "not homogeneous of degree 2n"}
        checked.append(n)
        if diff is not None:
            counterexample = {"n": n, **diff}
            break
    return {
        "target": family,
        "status": "ok" if counterexample is None else "fail",
        "nmax": n_max,
        "instances": instances,
        "counterexample": counterexample,
        "millis": int((time.perf_counter() - start) * 1000),
    }


# -- derived checks -------------------------------------------------------------------


def verify_elliptic(n_max: int = 5) -> dict:
    """Q8 at u_e=x_e, u_o=x_o and all y, v equal to 1 against alpha = (2k-1)^2 x_e, (2k)^2 x_o."""
    start = time.perf_counter()
    reg = family_registry("Q8")
    one = reg.one()
    binding = {"ue": reg.var("xe"), "uo": reg.var("xo"), "ye": one, "yo": one, "ve": one, "vo": one}
    alphas = [
        (i * i) * (reg.var("xe") if i % 2 else reg.var("xo")) for i in range(1, max(n_max, 1) + 1)
    ]
    series = s_series(SFractionSpec(alphas), n_max)
    inst, bad = 0, None
    for n in range(n_max + 1):
        res = family_poly("Q8", n)
        inst += res.instances
        diff = first_difference(res.poly.substitute(binding), series[n])
        if diff:
            bad = {"n": n, **diff}
            break
    return make_report("elliptic", n_max, inst, bad, start)


_LAMBDA_ONE = {"QC8": "QHAT9", "QC16": "QHAT17", "MASTERC": "MASTER2"}


def verify_lambda_one(family: str, n_max: int = 4) -> dict:
    """Coefficient of lam^1 in the lam-family equals the alternating-cycle family, both by brute force."""
    start = time.perf_counter()
    parent = _LAMBDA_ONE[family]
    cap = max(n_max, 1)
    inst, bad = 0, None
    for n in range(1, n_max + 1):
        child = family_poly(scheme(family, cap), n)
        whole = family_poly(scheme(parent, cap), n)
        inst += child.instances + whole.instances
        lam1 = whole.poly.coeff_in(LAM, 1).to_registry(child.poly.registry)
        diff = first_difference(lam1, child.poly)
        if diff:
            bad = {"n": n, **diff}
            break
    return make_report(f"lambda-one-{family}", n_max, inst, bad, start)


def verify_qhat9_lambda_degree(n_max: int = 4) -> dict:
    """deg_lam QHAT9_n = n and the top coefficient counts fixed-point-free involutions that are cycle-alternating."""
    start = time.perf_counter()
    inst, bad = 0, None
    for n in range(1, n_max + 1):
        res = family_poly("QHAT9", n)
        inst += res.instances
        deg = res.poly.degree_in(LAM)
        top = res.poly.coeff_in(LAM, n)
        top_count = sum(top.terms.values())
        involutions = sum(
            1
            for s in permstat.enumerate_perms("cycle_alternating", 2 * n)
            if all(len(c) == 2 for c in s.cycles())
        )
        if deg != n or top_count != involutions:
            bad = {"n": n, "degree": deg, "top_count": top_count, "involutions": involutions}
            break
        if not res.is_homogeneous():
            bad = {"n": n, "reason": "not homogeneous"}
            break
    return make_report("qhat9-lambda-degree", n_max, inst, bad, start)


def verify_pq_collapse(n_max: int = 3) -> dict:
    """Q16 with every p and q set to 1 is Q8."""
    start = time.perf_counter()
    reg16 = family_registry("Q16")
    ones = {name: reg16.one() for name in PQ_NAMES}
    inst, bad = 0, None
    for n in range(n_max + 1):
        a = family_poly("Q16", n)
        b = family_poly("Q8", n, route="profile")
        inst += a.instances + b.instances
        diff = first_difference(a.poly.substitute(ones).to_registry(b.poly.registry), b.poly)
        if diff:
            bad = {"n": n, **diff}
            break
    return make_report("pq-collapse", n_max, inst, bad, start)
