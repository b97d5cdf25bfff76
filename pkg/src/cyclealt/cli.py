"""Command-line entry point: ``cyclealt <subcommand> ...``.

Exit codes: 0 success, 1 a checked equality failed, 2 usage error,
3 a size budget was exceeded (a partial report is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import __version__, appendixlab, budgets, expr, laguerre, masterpolys, permstat
from .cfkernel import JFractionSpec, SFractionSpec, j_series, jr_matrix, s_series, series_to_j, series_to_s, sr_matrices
from .polyring import MultiPoly, RatFunc, VarRegistry
from .reports import make_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


# -- verify targets -----------------------------------------------------------------


def _combine(target: str, nmax: int, parts: Sequence[dict], start: float) -> dict:
    bad = None
    for p in parts:
        if p["status"] != "ok":
            bad = {"part": p["target"], **(p["counterexample"] or {})}
            break
    summary = [{"target": p["target"], "status": p["status"], "nmax": p["nmax"], "instances": p["instances"]} for p in parts]
    return make_report(target, nmax, sum(p["instances"] for p in parts), bad, start, parts=summary)


def _family_target(target: str, *families: str, extra: Callable[[int], list[dict]] | None = None):
    def run(nmax: int) -> dict:
        start = time.perf_counter()
        parts = [masterpolys.verify_family(f, nmax) for f in families]
        if extra:
            parts.extend(extra(nmax))
        return _combine(target, nmax, parts, start)

    return run


def _no_closed_form(nmax: int) -> list[dict]:
    """Unspecialized QHAT9 has no S-fraction in closed form; its 3-variable shadow has a non-polynomial gamma_1."""
    start = time.perf_counter()
    raised = False
    try:
        masterpolys.theorem_alphas("QHAT9", 1, specialized=False)
    except masterpolys.NoClosedForm:
        raised = True
    gamma1 = appendixlab.appendix_jcoeffs("A1", 2)[2]
    bad = None
    if not raised:
        bad = {"reason": "unspecialized QHAT9 returned coefficients"}
    elif gamma1.is_polynomial():
        bad = {"reason": "generic gamma_1 unexpectedly polynomial"}
    return [make_report("no-closed-form", nmax, 1, bad, start)]


def _counts(nmax: int) -> dict:
    start = time.perf_counter()
    reg = VarRegistry(())
    secants = s_series(SFractionSpec([reg.const(n * n) for n in range(1, nmax + 1)]), nmax)
    tangents = s_series(SFractionSpec([reg.const(n * (n + 1)) for n in range(1, nmax + 1)]), nmax)
    inst = 0
    bad = None
    observed = {"cycle_alternating": [], "alternating_cycles": []}
    for n in range(nmax + 1):
        ca = sum(permstat.record_cycle_census(2 * n).values())
        inst += ca
        observed["cycle_alternating"].append(ca)
        if ca != secants[n].constant_value():
            bad = bad or {"class": "cycle_alternating", "n": n, "enumerated": ca, "expected": str(secants[n])}
        if n >= 1:
            ac = sum(permstat.record_cycle_census(2 * n, single_cycle=True).values())
            inst += ac
            observed["alternating_cycles"].append(ac)
            if ac != tangents[n - 1].constant_value():
                bad = bad or {"class": "alternating_cycles", "n": n, "enumerated": ac, "expected": str(tangents[n - 1])}
    return make_report("counts", nmax, inst, bad, start, observed=observed)


def _key_lemma(nmax: int) -> dict:
    start = time.perf_counter()
    parts = [permstat.verify_key_lemmas(nmax, 7), permstat.verify_reversal_symmetry(min(nmax, 4))]
    return _combine("key-lemma", nmax, parts, start)


def _appendix(variant: str):
    def run(nmax: int, seed: int = 0) -> dict:
        rep = appendixlab.verify_appendix(variant, seed=seed, n_max=nmax)
        rep["target"] = f"appendix-{variant}"
        return rep

    return run


def _wrap(target: str, fn: Callable[[int], dict]):
    def run(nmax: int) -> dict:
        rep = fn(nmax)
        rep["target"] = target
        return rep

    return run


TARGETS: dict[str, Callable[..., dict]] = {
    "first-sfrac": _family_target("first-sfrac", "Q4", "Q8"),
    "first-sfrac-pq": _family_target(
        "first-sfrac-pq", "Q16", extra=lambda n: [masterpolys.verify_pq_collapse(min(n, 3))]
    ),
    "key-lemma": _key_lemma,
    "second-sfrac": _family_target(
        "second-sfrac",
        "QHAT9",
        extra=lambda n: _no_closed_form(n) + [masterpolys.verify_qhat9_lambda_degree(min(n, 4))],
    ),
    "second-sfrac-pq": _family_target("second-sfrac-pq", "QHAT17"),
    "altcyc": _family_target("altcyc", "QC8", extra=lambda n: [masterpolys.verify_lambda_one("QC8", n)]),
    "altcyc-pq": _family_target("altcyc-pq", "QC16", extra=lambda n: [masterpolys.verify_lambda_one("QC16", n)]),
    "altcyc-master": _family_target(
        "altcyc-master", "MASTERC", extra=lambda n: [masterpolys.verify_lambda_one("MASTERC", n)]
    ),
    "master1": _family_target("master1", "MASTER1"),
    "master2": _family_target("master2", "MASTER2"),
    "biane": _family_target("biane", "BIANE_Q"),
    "elliptic": _wrap("elliptic", masterpolys.verify_elliptic),
    "laguerre-matrix": _wrap("laguerre-matrix", laguerre.verify_printed_matrix),
    "laguerre-recurrence": _wrap("laguerre-recurrence", laguerre.verify_recurrence),
    "laguerre-jr": _wrap("laguerre-jr", laguerre.verify_jr_theorem),
    "laguerre-sr": _wrap("laguerre-sr", lambda n: laguerre.verify_sr_corollary(n, n - 1)),
    "gensr": _wrap("gensr", lambda n: laguerre.verify_gensr("GENSR9", n, n - 1)),
    "gensr-pq": _wrap("gensr-pq", lambda n: laguerre.verify_gensr("GENSR_PQ", n, n - 1)),
    "zeng-odes": _wrap("zeng-odes", laguerre.zeng_checks),
    "egf-columns": _wrap("egf-columns", laguerre.verify_egf_columns),
    "records-lemmas": _wrap("records-lemmas", lambda n: laguerre.verify_records_lemmas(6, n, 6)),
    "appendix-A1": _appendix("A1"),
    "appendix-A2": _appendix("A2"),
    "lambda-minus1": _wrap("lambda-minus1", appendixlab.lambda_minus1_check),
    "counts": _counts,
}
SEEDED = {"appendix-A1", "appendix-A2"}


def run_target(target: str, nmax: int | None = None, seed: int = 0) -> dict:
    if target not in TARGETS:
        raise KeyError(target)
    n = budgets.default_nmax(target) if nmax is None else nmax
    fn = TARGETS[target]
    start = time.perf_counter()
    try:
        return fn(n, seed) if target in SEEDED else fn(n)
    except budgets.BudgetError as exc:
        rep = make_report(target, n, 0, None, start)
        rep["status"] = "skip"
        rep["skipped"] = f"budget exceeded: {exc}"
        return rep


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: (0 if k == "millis" else _strip_timing(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _cmd_verify(args) -> int:
    names = list(TARGETS) if args.target == "all" else [args.target]
    if args.target != "all" and args.target not in TARGETS:
        print(f"unknown target {args.target!r}; choose from: all, {', '.join(TARGETS)}", file=sys.stderr)
        return EXIT_USAGE
    nmax = args.nmax
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futs = {t: pool.submit(run_target, t, nmax, args.seed) for t in names}
            reports = [futs[t].result() for t in names]
    else:
        reports = [run_target(t, nmax, args.seed) for t in names]
    reports.sort(key=lambda r: r["target"])
    if args.no_timing:
        reports = _strip_timing(reports)
    payload = reports[0] if len(reports) == 1 and args.target != "all" else {"reports": reports}
    text = canonical(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        for r in reports:
            print(f"{r['target']:22s} {r['status']:6s} nmax={r['nmax']} instances={r['instances']} millis={r['millis']}")
    if any(r["status"] == "skip" for r in reports):
        return EXIT_BUDGET
    return EXIT_OK if all(r["status"] == "ok" for r in reports) else EXIT_FAIL


# -- other subcommands ------------------------------------------------------------------


def _registry_for(*texts: str | None) -> VarRegistry:
    names: list[str] = []
    for t in texts:
        if t:
            for v in expr.variables_in(t):
                if v not in names:
                    names.append(v)
    return VarRegistry(names)


def _fmt(x) -> str:
    if isinstance(x, RatFunc):
        p = x.as_poly()
        return str(p) if p is not None else f"({x.num})/({x.den})"
    return str(x)


def _json_of(x):
    return x.to_json_obj() if isinstance(x, (MultiPoly, RatFunc)) else x


def _emit(args, text_lines: Sequence[str], obj) -> None:
    if args.json:
        sys.stdout.write(canonical(obj))
    else:
        for line in text_lines:
            print(line)


def _cmd_enumerate(args) -> int:
    perms = permstat.enumerate_perms(args.perm_class, args.N)
    if args.count:
        total = sum(1 for _ in perms)
        _emit(args, [str(total)], {"class": args.perm_class, "N": args.N, "count": total})
        return EXIT_OK
    for sigma in perms:
        if args.json:
            summ = permstat.summarize(sigma)
            print(json.dumps({"word": list(sigma.word), "summary": dict(sorted(summ.counts.items()))}, sort_keys=True))
        else:
            print(sigma)
    return EXIT_OK


def _cmd_poly(args) -> int:
    if args.family not in masterpolys.FAMILIES:
        print(f"unknown family {args.family!r}", file=sys.stderr)
        return EXIT_USAGE
    sch = masterpolys.scheme(args.family, args.cap if args.cap is not None else max(args.n, 1))
    res = masterpolys.family_poly(sch, args.n, route=args.route)
    _emit(
        args,
        [str(res.poly)],
        {"family": args.family, "n": args.n, "instances": res.instances, "poly": res.poly.to_json_obj()},
    )
    return EXIT_OK


def _cmd_cf(args) -> int:
    if args.action == "expand":
        if args.alphas:
            reg = _registry_for(args.alphas)
            count = max(2 * args.N, 1) if args.matrix else max(args.N, 1)
            spec = SFractionSpec([expr.evaluate(args.alphas, reg, {"n": n}) for n in range(1, count + 1)])
            if args.matrix:
                S, Sp = sr_matrices(spec, args.N)
                rows = [[_fmt(S[n, k]) for k in range(n + 1)] for n in range(args.N + 1)]
                rows2 = [[_fmt(Sp[n, k]) for k in range(n + 1)] for n in range(args.N + 1)]
                _emit(args, [", ".join(r) for r in rows] + ["--"] + [", ".join(r) for r in rows2], {"S": rows, "S_prime": rows2})
                return EXIT_OK
            series = s_series(spec, args.N)
        elif args.gammas is not None and args.betas is not None:
            reg = _registry_for(args.gammas, args.betas)
            spec = JFractionSpec(
                [expr.evaluate(args.gammas, reg, {"n": n}) for n in range(max(args.N, 1))],
                [expr.evaluate(args.betas, reg, {"n": n}) for n in range(1, max(args.N, 1) + 1)],
            )
            if args.matrix:
                J = jr_matrix(spec, args.N)
                rows = [[_fmt(J[n, k]) for k in range(n + 1)] for n in range(args.N + 1)]
                _emit(args, [", ".join(r) for r in rows], {"J": rows})
                return EXIT_OK
            series = j_series(spec, args.N)
        else:
            print("cf expand needs --alphas, or both --gammas and --betas", file=sys.stderr)
            return EXIT_USAGE
        _emit(args, [",".join(map(_fmt, series))], {"series": [_fmt(x) for x in series]})
        return EXIT_OK
    # extract
    if not args.series:
        print("cf extract needs --series", file=sys.stderr)
        return EXIT_USAGE
    items = [s.strip() for s in args.series.split(",") if s.strip()]
    reg = _registry_for(*items)
    terms = [expr.evaluate(t, reg) for t in items]
    if args.kind == "s":
        alphas = series_to_s(terms, args.depth).alphas
        _emit(args, [f"alpha_{i} = {_fmt(a)}" for i, a in enumerate(alphas, 1)], {"alphas": [_fmt(a) for a in alphas]})
    else:
        spec = series_to_j(terms, args.depth)
        lines = [f"gamma_{i} = {_fmt(g)}" for i, g in enumerate(spec.gammas)]
        lines += [f"beta_{i} = {_fmt(b)}" for i, b in enumerate(spec.betas, 1)]
        _emit(args, lines, {"gammas": [_fmt(g) for g in spec.gammas], "betas": [_fmt(b) for b in spec.betas]})
    return EXIT_OK


def _cmd_matrix(args) -> int:
    if args.latex:
        if args.variant != "alternating":
            print("--latex is only available for the alternating variant", file=sys.stderr)
            return EXIT_USAGE
        rows = laguerre.printed_matrix_rows(args.nmax)
        _emit(args, [r + " \\\\" for r in rows], {"rows": rows})
        return EXIT_OK
    if args.symbolic:
        m = laguerre.coeffmat(args.nmax, args.variant, force=args.force)
    else:
        m = laguerre.lambda_matrix(args.nmax, args.variant, force=args.force)
    rows = [[str(m[n, k]) for k in range(n + 1)] for n in range(args.nmax + 1)]
    _emit(args, [" | ".join(r) for r in rows], {"variant": args.variant, "nmax": args.nmax, "matrix": m.to_json_obj()})
    return EXIT_OK


def _boundary(name: str) -> laguerre.Boundary:
    return laguerre.Boundary.INF if name == "inf" else laguerre.Boundary.ZERO


def _cmd_laguerre(args) -> int:
    if args.action == "egf":
        s = laguerre.egf_series(args.kind, args.N, args.k)
        _emit(args, [f"t^{n}/{n}!: {c}" for n, c in enumerate(s.coeffs)], {"kind": args.kind, "k": args.k, "coeffs": [c.to_json_obj() for c in s.coeffs]})
    elif args.action == "enumerate":
        graphs = list(laguerre.enumerate_ld(args.n, args.k, args.alternating, _boundary(args.boundary)))
        if args.count:
            _emit(args, [str(len(graphs))], {"count": len(graphs)})
        else:
            lines = [" ".join("B" if s is laguerre.BOUNDARY else str(s) for s in G.succ) for G in graphs]
            _emit(args, lines, {"succ": [[None if s is laguerre.BOUNDARY else s for s in G.succ] for G in graphs]})
    elif args.action == "qtilde":
        p = laguerre.qtilde(args.n, args.k if args.k is not None else 0)
        _emit(args, [str(p)], {"n": args.n, "k": args.k, "poly": p.to_json_obj()})
    elif args.action == "gensr":
        p = laguerre.gensr_families(args.family, args.n, args.k if args.k is not None else 0, force=args.force)
        _emit(args, [str(p)], {"family": args.family, "n": args.n, "k": args.k, "poly": p.to_json_obj()})
    elif args.action == "zeng":
        rep = laguerre.zeng_checks(args.N)
        _emit(args, [rep["status"]], rep)
        return EXIT_OK if rep["status"] == "ok" else EXIT_FAIL
    return EXIT_OK


def _cmd_appendix(args) -> int:
    if args.lambda_minus1:
        rep = appendixlab.lambda_minus1_check(args.nmax if args.nmax is not None else 6)
        _emit(args, [f"alpha_{i}: {a}" for i, a in enumerate(rep["alphas"].get("8-variable", []), 1)], rep)
        return EXIT_OK if rep["status"] == "ok" else EXIT_FAIL
    if args.table:
        table = appendixlab.specialization_table(args.variant, args.seed)
        lines = [
            f"{json.dumps(v.to_json_obj()['specialization'], sort_keys=True):18s} {v.coefficient:7s} {v.verdict:15s} "
            f"{'' if v.quotient is None else v.quotient}  {'match' if v.matches else 'MISMATCH'}"
            for v in table
        ]
        _emit(args, lines, {"variant": args.variant, "table": [v.to_json_obj() for v in table]})
        return EXIT_OK if all(v.matches for v in table) else EXIT_FAIL
    coeffs = appendixlab.appendix_jcoeffs(args.variant, args.depth)
    names = appendixlab.COEFF_ORDER[: len(coeffs)]
    _emit(args, [f"{n} = {_fmt(c)}" for n, c in zip(names, coeffs)], {n: _fmt(c) for n, c in zip(names, coeffs)})
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclealt", description="Exact generating polynomials and continued fractions.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("enumerate", help="stream a permutation class")
    common(p)
    p.add_argument("--class", dest="perm_class", choices=permstat.PERM_CLASSES, default="cycle_alternating")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("poly", help="brute-force family polynomial")
    common(p)
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="index cap for a/b families")
    p.add_argument("--route", choices=("auto", "census", "profile"), default="auto")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("cf", help="continued fraction expansion and extraction")
    common(p)
    p.add_argument("action", choices=("expand", "extract"))
    p.add_argument("--alphas", help="alpha_n as an expression in n")
    p.add_argument("--gammas", help="gamma_n (n >= 0) as an expression")
    p.add_argument("--betas", help="beta_n (n >= 1) as an expression")
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--matrix", action="store_true", help="print the Stieltjes-Rogers or Jacobi-Rogers triangle")
    p.add_argument("--series", help="comma-separated series terms for extraction")
    p.add_argument("--kind", choices=("s", "j"), default="s")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=_cmd_cf)

    p = sub.add_parser("matrix", help="Laguerre coefficient matrix")
    common(p)
    p.add_argument("--variant", choices=("alternating", "full"), default="alternating")
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--symbolic", action="store_true", help="keep the role weights symbolic")
    p.add_argument("--latex", action="store_true")
    p.add_argument("--force", action="store_true", help="ignore the size budget")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("laguerre", help="Laguerre digraph tools")
    common(p)
    p.add_argument("action", choices=("egf", "enumerate", "qtilde", "gensr", "zeng"))
    p.add_argument("--kind", choices=("sec_pow", "tan", "column"), default="column")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--alternating", action="store_true")
    p.add_argument("--boundary", choices=("inf", "zero"), default="inf")
    p.add_argument("--count", action="store_true")
    p.add_argument("--family", choices=tuple(laguerre.GENSR_FAMILIES), default="GENSR9")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_laguerre)

    p = sub.add_parser("appendix", help="J-fraction coefficients and polynomiality verdicts")
    common(p)
    p.add_argument("--variant", choices=("A1", "A2"), default="A1")
    p.add_argument("--table", action="store_true")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--lambda-minus1", action="store_true")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_appendix)

    p = sub.add_parser("verify", help="run verification targets")
    common(p)
    p.add_argument("target", help="target id or 'all'")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="zero every millis field for byte-identical reports")
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "command", None) == "laguerre" and args.action == "egf" and args.k is None:
        args.k = 0
    try:
        return args.func(args)
    except budgets.BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (expr.ExprError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
