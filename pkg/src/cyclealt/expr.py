"""Tiny arithmetic grammar for coefficient families given on the command line.

Grammar (version 1)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | atom ('^' | '**') factor
    atom   := INTEGER | 'n' | 'k' | VARIABLE | VARIABLE '[' INT (',' INT)* ']' | '(' expr ')'

``n`` and ``k`` are integer indices bound at evaluation time; every other name
is a variable of the chosen registry.  Exponents must reduce to non-negative
integers.  Parsing reuses Python's ``ast`` module with a strict node whitelist.
"""

from __future__ import annotations

import ast
from typing import Mapping

from .polyring import MultiPoly, VarRegistry

GRAMMAR_VERSION = 1
INDEX_NAMES = ("n", "k")


class ExprError(ValueError):
    pass


def _parse(text: str) -> ast.expr:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"cannot parse {text!r}: {exc.msg}") from None
    return tree.body


def _subscript_name(node: ast.Subscript) -> str:
    if not isinstance(node.value, ast.Name):
        raise ExprError("only variable families may be subscripted")
    sl = node.slice
    items = sl.elts if isinstance(sl, ast.Tuple) else [sl]
    idx = []
    for it in items:
        if not (isinstance(it, ast.Constant) and isinstance(it.value, int)):
            raise ExprError("subscripts must be integer literals")
        idx.append(str(it.value))
    return f"{node.value.id}[{','.join(idx)}]"


def variables_in(text: str) -> list[str]:
    """Registry variable names mentioned by an expression, in first-seen order."""
    seen: list[str] = []

    def walk(node: ast.AST) -> None:
        if isinstance(node, ast.Subscript):
            name = _subscript_name(node)
            if name not in seen:
                seen.append(name)
            return
        if isinstance(node, ast.Name) and node.id not in INDEX_NAMES and node.id not in seen:
            seen.append(node.id)
        for child in ast.iter_child_nodes(node):
            walk(child)

    walk(_parse(text))
    return seen


def evaluate(text: str, registry: VarRegistry, env: Mapping[str, int] | None = None) -> MultiPoly:
    """Evaluate an expression to a polynomial over ``registry``."""
    env = dict(env or {})
    node = _parse(text)

    def ev(nd: ast.AST) -> MultiPoly:
        if isinstance(nd, ast.Constant) and isinstance(nd.value, int) and not isinstance(nd.value, bool):
            return registry.const(nd.value)
        if isinstance(nd, ast.Name):
            if nd.id in INDEX_NAMES:
                if nd.id not in env:
                    raise ExprError(f"index {nd.id!r} is not bound here")
                return registry.const(env[nd.id])
            if nd.id not in registry:
                raise ExprError(f"unknown variable {nd.id!r}")
            return registry.var(nd.id)
        if isinstance(nd, ast.Subscript):
            name = _subscript_name(nd)
            if name not in registry:
                raise ExprError(f"unknown variable {name!r}")
            return registry.var(name)
        if isinstance(nd, ast.UnaryOp) and isinstance(nd.op, (ast.USub, ast.UAdd)):
            v = ev(nd.operand)
            return -v if isinstance(nd.op, ast.USub) else v
        if isinstance(nd, ast.BinOp):
            left = ev(nd.left)
            if isinstance(nd.op, ast.Pow):
                exp = ev(nd.right)
                if not exp.is_constant() or exp.constant_value() < 0:
                    raise ExprError("exponents must be non-negative integers")
                return left ** exp.constant_value()
            right = ev(nd.right)
            if isinstance(nd.op, ast.Add):
                return left + right
            if isinstance(nd.op, ast.Sub):
                return left - right
            if isinstance(nd.op, ast.Mult):
                return left * right
        raise ExprError(f"unsupported syntax in {text!r}")

    return ev(node)
