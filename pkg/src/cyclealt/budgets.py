"""Size budgets for brute-force enumerations, read from ``budgets.json``."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


class BudgetError(ValueError):
    """A requested size exceeds the configured brute-force budget."""


@lru_cache(maxsize=1)
def budgets() -> dict:
    with resources.files(__package__).joinpath("budgets.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


def cap(name: str) -> int:
    return int(budgets()["caps"][name])


def default_nmax(target: str) -> int:
    return int(budgets()["targets"][target])


def check(name: str, n: int, override: bool = False) -> None:
    """Raise :class:`BudgetError` when ``n`` exceeds the cap, unless overridden."""
    limit = cap(name)
    if n > limit and not override:
        raise BudgetError(f"{name}: n={n} exceeds budget {limit} (use --force to override)")
