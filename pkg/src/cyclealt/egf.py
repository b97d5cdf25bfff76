"""Exponential generating functions with n!-scaled coefficients.

A series is stored as the list of ``n! [t^n] f``.  With that scaling the
product is a binomial convolution, differentiation is a left shift and every
series used here (sec, tan, log sec, exp of a polynomial multiple of log sec)
has integer, or integer-polynomial, coefficients, so no fractions arise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence

from .polyring import MultiPoly, VarRegistry, exact_div

__all__ = ["EgfSeries", "egf_mul", "egf_pow", "egf_inverse", "egf_exp", "egf_log", "cos_series", "sin_series"]


@dataclass(frozen=True)
class EgfSeries:
    coeffs: tuple  # coeffs[n] = n! [t^n], MultiPoly entries
    registry: VarRegistry

    def __init__(self, coeffs: Sequence, registry: VarRegistry):
        object.__setattr__(self, "registry", registry)
        object.__setattr__(
            self, "coeffs", tuple(c if isinstance(c, MultiPoly) else registry.const(int(c)) for c in coeffs)
        )

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> MultiPoly:
        return self.coeffs[n]

    def scale(self, c: MultiPoly | int) -> "EgfSeries":
        return EgfSeries([x * c for x in self.coeffs], self.registry)

    def __add__(self, other: "EgfSeries") -> "EgfSeries":
        n = min(len(self), len(other))
        return EgfSeries([self[i] + other[i] for i in range(n)], self.registry)

    def __sub__(self, other: "EgfSeries") -> "EgfSeries":
        n = min(len(self), len(other))
        return EgfSeries([self[i] - other[i] for i in range(n)], self.registry)

    def derivative(self) -> "EgfSeries":
        return EgfSeries(self.coeffs[1:], self.registry)

    def integral(self) -> "EgfSeries":
        """Antiderivative with zero constant term; one coefficient longer."""
        return EgfSeries((self.registry.zero(),) + self.coeffs, self.registry)

    def divide_const(self, d: int) -> "EgfSeries":
        """Exact division of every coefficient by an integer."""
        dd = self.registry.const(d)
        return EgfSeries([exact_div(x, dd) for x in self.coeffs], self.registry)

    def ogf_coeff(self, n: int):
        """[t^n] as a (numerator polynomial, denominator n!) pair."""
        return self.coeffs[n], factorial(n)


def egf_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    N = min(len(f), len(g))
    reg = f.registry
    out = []
    for n in range(N):
        acc = reg.zero()
        for i in range(n + 1):
            a, b = f[i], g[n - i]
            if a and b:
                acc = acc + (a * b) * comb(n, i)
        out.append(acc)
    return EgfSeries(out, reg)


def egf_pow(f: EgfSeries, k: int) -> EgfSeries:
    result = EgfSeries([f.registry.one()] + [f.registry.zero()] * (len(f) - 1), f.registry)
    for _ in range(k):
        result = egf_mul(result, f)
    return result


def egf_inverse(f: EgfSeries) -> EgfSeries:
    """1/f for a series with constant term 1."""
    reg = f.registry
    if f[0] != 1:
        raise ValueError("constant term must be 1")
    g = [reg.one()]
    for n in range(1, len(f)):
        acc = reg.zero()
        for i in range(1, n + 1):
            if f[i]:
                acc = acc + (f[i] * g[n - i]) * comb(n, i)
        g.append(-acc)
    return EgfSeries(g, reg)


def egf_exp(g: EgfSeries) -> EgfSeries:
    """exp(g) for g with zero constant term, via e' = g' e."""
    reg = g.registry
    if g[0]:
        raise ValueError("constant term must vanish")
    e = [reg.one()]
    for n in range(len(g) - 1):
        acc = reg.zero()
        for i in range(n + 1):
            if g[i + 1]:
                acc = acc + (g[i + 1] * e[n - i]) * comb(n, i)
        e.append(acc)
    return EgfSeries(e, reg)


def egf_log(f: EgfSeries) -> EgfSeries:
    """log(f) for f with constant term 1, as the integral of f'/f."""
    return egf_mul(f.derivative(), egf_inverse(f)).integral() if len(f) > 1 else EgfSeries([f.registry.zero()], f.registry)


def cos_series(N: int, reg: VarRegistry) -> EgfSeries:
    return EgfSeries([(0 if n % 2 else (-1) ** (n // 2)) for n in range(N + 1)], reg)


def sin_series(N: int, reg: VarRegistry) -> EgfSeries:
    return EgfSeries([((-1) ** (n // 2) if n % 2 else 0) for n in range(N + 1)], reg)
