"""Uniform verification report records."""

from __future__ import annotations

import time


def make_report(target: str, nmax: int, instances: int, counterexample, start: float, **extra) -> dict:
    """Report dict with the fixed key set; extra keys follow the standard ones."""
    rep = {
        "target": target,
        "status": "ok" if counterexample is None else "fail",
        "nmax": nmax,
        "instances": instances,
        "counterexample": counterexample,
        "millis": int((time.perf_counter() - start) * 1000),
    }
    rep.update(extra)
    return rep
