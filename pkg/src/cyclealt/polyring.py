"""Exact sparse multivariate polynomials and unreduced rational functions.

Polynomials have arbitrary-precision integer coefficients and live over a
:class:`VarRegistry`, an ordered tuple of variable names.  Exponent vectors
are dense tuples whose length equals the registry size.  The single monomial
order used everywhere is graded lexicographic with the registry order.
"""

from __future__ import annotations

import heapq
import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

__all__ = [
    "RegistryError",
    "NotDivisible",
    "DivisionByZero",
    "VarRegistry",
    "MultiPoly",
    "RatFunc",
    "exact_div",
    "divmod_poly",
    "glex_key",
]


class RegistryError(ValueError):
    """Operands live on different registries, or a variable name is unknown."""


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the divisor does not divide exactly."""


class DivisionByZero(ZeroDivisionError):
    pass


Exponent = tuple[int, ...]


def glex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


@dataclass(frozen=True)
class VarRegistry:
    names: tuple[str, ...]
    _index: dict[str, int] = field(default=None, compare=False, repr=False, hash=False)  # type: ignore[assignment]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RegistryError(f"duplicate variable names in {names!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RegistryError(f"unknown variable {name!r}") from None

    def extend(self, *names: str) -> "VarRegistry":
        return VarRegistry(self.names + tuple(n for n in names if n not in self._index))

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c: int) -> "MultiPoly":
        return MultiPoly(self, {(0,) * len(self.names): c} if c else {})

    def var(self, name: str) -> "MultiPoly":
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): 1})

    def gens(self, *names: str) -> tuple["MultiPoly", ...]:
        return tuple(self.var(n) for n in names)

    def monomial(self, powers: Mapping[str, int], coeff: int = 1) -> "MultiPoly":
        e = [0] * len(self.names)
        for name, k in powers.items():
            if k < 0:
                raise ValueError("negative exponent")
            e[self.index(name)] += k
        return MultiPoly(self, {tuple(e): coeff} if coeff else {})


Coercible = Union["MultiPoly", int]


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero ints."""

    __slots__ = ("registry", "_terms", "_hash")

    def __init__(self, registry: VarRegistry, terms: Mapping[Exponent, int] | None = None):
        self.registry = registry
        n = len(registry)
        clean: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            if c:
                if len(e) != n:
                    raise RegistryError("exponent vector length does not match registry")
                clean[tuple(e)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, registry: VarRegistry, terms: dict[Exponent, int]) -> "MultiPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.registry = registry
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.registry.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.registry)
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(n for n, u in zip(self.registry.names, used) if u)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda t: glex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=glex_key)
        return e, self._terms[e]

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        return g

    def coefficient(self, powers: Mapping[str, int]) -> int:
        e = [0] * len(self.registry)
        for name, k in powers.items():
            e[self.registry.index(name)] = k
        return self._terms.get(tuple(e), 0)

    def coeff_in(self, name: str, d: int) -> "MultiPoly":
        """Coefficient of ``name**d``, as a polynomial not involving ``name``."""
        i = self.registry.index(name)
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            if e[i] == d:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return MultiPoly._raw(self.registry, out)

    def is_homogeneous(self, names: Iterable[str] | None = None) -> bool:
        idx = range(len(self.registry)) if names is None else [self.registry.index(n) for n in names]
        degs = {sum(e[i] for i in idx) for e in self._terms}
        return len(degs) <= 1

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other: object) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.registry != self.registry:
                raise RegistryError("operands use different registries")
            return other
        if isinstance(other, int):
            return self.registry.const(other)
        return NotImplemented  # type: ignore[return-value]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Coercible) -> "MultiPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            a, b = o._terms, self._terms
        else:
            a, b = self._terms, o._terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.registry, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.registry, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> "MultiPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.registry, out)

    def __rsub__(self, other: Coercible) -> "MultiPoly":
        return (-self).__add__(other)

    def __mul__(self, other: Coercible) -> "MultiPoly":
        if isinstance(other, int):
            if not other:
                return MultiPoly._raw(self.registry, {})
            return MultiPoly._raw(self.registry, {e: c * other for e, c in self._terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: dict[Exponent, int] = {}
        add = operator.add
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(self.registry, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.registry.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, MultiPoly):
            return self.registry == other.registry and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.registry.names, frozenset(self._terms.items())))
        return self._hash

    def __floordiv__(self, other: Coercible) -> "MultiPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return exact_div(self, o)

    # -- substitution and evaluation --------------------------------------
    def substitute(
        self,
        bindings: Mapping[str, Coercible],
        target: VarRegistry | None = None,
    ) -> "MultiPoly":
        """Replace bound variables by polynomials in ``target`` (default: own registry).

        Unbound variables keep their name and must exist in ``target``.
        """
        target = target or self.registry
        names = self.registry.names
        for name in bindings:
            if name not in self.registry:
                raise RegistryError(f"unknown variable {name!r}")
        images: list[MultiPoly | None] = []
        for name in names:
            if name in bindings:
                img = bindings[name]
                if isinstance(img, int):
                    img = target.const(img)
                elif img.registry != target:
                    raise RegistryError(f"image of {name!r} is not in the target registry")
                images.append(img)
            else:
                images.append(None)
        bound = [i for i, img in enumerate(images) if img is not None]
        free = [i for i, img in enumerate(images) if img is None]
        free_pos = {i: target.index(names[i]) for i in free if any(e[i] for e in self._terms)}
        # group by bound exponent pattern
        groups: dict[tuple[int, ...], dict[Exponent, int]] = {}
        tlen = len(target)
        for e, c in self._terms.items():
            be = tuple(e[i] for i in bound)
            te = [0] * tlen
            for i, pos in free_pos.items():
                te[pos] += e[i]
            g = groups.setdefault(be, {})
            te_t = tuple(te)
            g[te_t] = g.get(te_t, 0) + c
        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = images[i] ** k  # type: ignore[operator]
            return power_cache[key]

        result = target.zero()
        for be, free_terms in groups.items():
            factor = MultiPoly(target, free_terms)
            for i, k in zip(bound, be):
                if k:
                    factor = factor * power(i, k)
            result = result + factor
        return result

    def to_registry(self, target: VarRegistry) -> "MultiPoly":
        return self.substitute({}, target)

    def evaluate(self, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Exact rational value at a point assigning every occurring variable."""
        vals = []
        for name, used in zip(self.registry.names, self._used_mask()):
            if used:
                if name not in point:
                    raise RegistryError(f"no value for {name!r}")
                vals.append(Fraction(point[name]))
            else:
                vals.append(Fraction(1))
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            total += term
        return total

    def _used_mask(self) -> list[bool]:
        used = [False] * len(self.registry)
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return used

    # -- formatting -------------------------------------------------------
    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.registry.names, e)
                if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self.registry.names),
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping, registry: VarRegistry | None = None) -> "MultiPoly":
        reg = VarRegistry(obj["vars"])
        if registry is not None and registry != reg:
            raise RegistryError("serialized registry differs from the requested one")
        return cls(reg, {tuple(t["e"]): int(t["c"]) for t in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_obj(json.loads(text))


def exact_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Return ``q`` with ``q * den == num``; raise :class:`NotDivisible` otherwise."""
    if num.registry != den.registry:
        raise RegistryError("operands use different registries")
    if den.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    reg = num.registry
    if num.is_zero():
        return reg.zero()
    lt_e, lt_c = den.leading_term()
    if len(den) == 1:
        out = {}
        for e, c in num._terms.items():
            q, r = divmod(c, lt_c)
            if r or any(a < b for a, b in zip(e, lt_e)):
                raise NotDivisible
            out[tuple(map(operator.sub, e, lt_e))] = q
        return MultiPoly._raw(reg, out)
    rest = [(e, c) for e, c in den._terms.items() if e != lt_e]
    if num.total_degree() < sum(lt_e):
        raise NotDivisible
    rem = dict(num._terms)

    def key(e: Exponent):
        return (-sum(e), tuple(-x for x in e))

    heap = [(key(e), e) for e in rem]
    heapq.heapify(heap)
    quotient: dict[Exponent, int] = {}
    sub, add = operator.sub, operator.add
    while rem:
        _, e = heapq.heappop(heap)
        c = rem.get(e)
        if c is None:
            continue
        qc, r = divmod(c, lt_c)
        if r:
            raise NotDivisible
        qe = tuple(map(sub, e, lt_e))
        if min(qe) < 0:
            raise NotDivisible
        quotient[qe] = qc
        del rem[e]
        for de, dc in rest:
            m = tuple(map(add, qe, de))
            v = rem.get(m, 0) - qc * dc
            if v:
                if m not in rem:
                    heapq.heappush(heap, (key(m), m))
                rem[m] = v
            else:
                rem.pop(m, None)
    return MultiPoly._raw(reg, quotient)


def divmod_poly(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Division by leading term with remainder over the integers.

    Terms whose leading monomial (or coefficient) is not divisible move to the
    remainder; ``num == q * den + r`` always holds.
    """
    if den.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    reg = num.registry
    lt_e, lt_c = den.leading_term()
    p = num
    q_terms: dict[Exponent, int] = {}
    r_terms: dict[Exponent, int] = {}
    while not p.is_zero():
        e, c = p.leading_term()
        qc, rc = divmod(c, lt_c)
        qe = tuple(map(operator.sub, e, lt_e))
        if min(qe) >= 0 and qc:
            q_terms[qe] = q_terms.get(qe, 0) + qc
            # any leftover coefficient rc stays and lands in the remainder next round
            p = p - MultiPoly._raw(reg, {qe: qc}) * den
        else:
            r_terms[e] = r_terms.get(e, 0) + c
            p = p - MultiPoly._raw(reg, {e: c})
    return MultiPoly(reg, q_terms), MultiPoly(reg, r_terms)


def _strip_content(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Cancel the common integer content and the common monomial factor; make den's leading coefficient positive."""
    g = math.gcd(num.content(), den.content())
    sign = -1 if den.leading_term()[1] < 0 else 1
    exps = list(num._terms) + list(den._terms)
    shift = tuple(min(col) for col in zip(*exps)) if exps and exps[0] else ()
    if not any(shift):
        shift = ()
    if g > 1 or sign < 0 or shift:
        f = g * sign

        def scaled(p: MultiPoly) -> MultiPoly:
            if shift:
                return MultiPoly._raw(
                    p.registry, {tuple(a - b for a, b in zip(e, shift)): c // f for e, c in p._terms.items()}
                )
            return MultiPoly._raw(p.registry, {e: c // f for e, c in p._terms.items()})

        num, den = scaled(num), scaled(den)
    return num, den


RatCoercible = Union["RatFunc", MultiPoly, int]


class RatFunc:
    """Fraction ``num/den`` of polynomials, kept unreduced apart from cheap steps.

    Integer content is stripped and, whenever ``den`` divides ``num`` exactly,
    the fraction collapses to a polynomial over 1.  Equality is decided by
    cross-multiplication, so no gcd is ever needed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = num.registry.one()
        if num.registry != den.registry:
            raise RegistryError("numerator and denominator use different registries")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            den = num.registry.one()
        elif not (den.is_constant() and den.constant_value() == 1):
            num, den = _strip_content(num, den)
            if not den.is_constant() or den.constant_value() != 1:
                try:
                    num, den = exact_div(num, den), num.registry.one()
                except NotDivisible:
                    pass
        self.num = num
        self.den = den

    @property
    def registry(self) -> VarRegistry:
        return self.num.registry

    def _coerce(self, other: object) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.registry != self.registry:
                raise RegistryError("operands use different registries")
            return other
        if isinstance(other, MultiPoly):
            if other.registry != self.registry:
                raise RegistryError("operands use different registries")
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc(self.registry.const(other))
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.as_poly() is not None

    def as_poly(self) -> MultiPoly | None:
        """The polynomial equal to this fraction if the division is exact."""
        if self.den == 1:
            return self.num
        try:
            return exact_div(self.num, self.den)
        except NotDivisible:
            return None

    def __add__(self, other: RatCoercible) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        r = object.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other: RatCoercible) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: RatCoercible) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other: RatCoercible) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatCoercible) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: RatCoercible) -> "RatFunc":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return RatFunc(self.registry.one()) / (self ** (-k))
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RatFunc, MultiPoly, int)):
            return NotImplemented
        o = self._coerce(other)
        if self.den == o.den:
            return self.num == o.num
        return self.num * o.den == o.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def substitute(self, bindings: Mapping[str, Coercible], target: VarRegistry | None = None) -> "RatFunc":
        return RatFunc(self.num.substitute(bindings, target), self.den.substitute(bindings, target))

    def evaluate(self, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise DivisionByZero("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json_obj(self) -> dict:
        return {"num": self.num.to_json_obj(), "den": self.den.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "RatFunc":
        return cls(MultiPoly.from_json_obj(obj["num"]), MultiPoly.from_json_obj(obj["den"]))
