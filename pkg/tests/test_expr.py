import pytest

from cyclealt.expr import ExprError, evaluate, variables_in
from cyclealt.polyring import VarRegistry

REG = VarRegistry(("x", "y", "lam", "a[0]", "b[1,0]"))
x, y, lam = REG.gens("x", "y", "lam")


def test_arithmetic_and_powers():
    assert evaluate("(x+y)^2 - x**2", REG) == 2 * x * y + y**2
    assert evaluate("-3*lam + 7", REG) == 7 - 3 * lam


def test_index_variables():
    assert evaluate("n*(x+n)", REG, {"n": 3}) == 3 * x + 9
    assert evaluate("(2*n-1)*(2*n)", REG, {"n": 2}) == 12


def test_subscripted_names():
    assert evaluate("a[0]*b[1,0]", REG) == REG.var("a[0]") * REG.var("b[1,0]")
    assert set(variables_in("a[0]*b[1,0] + x")) == {"a[0]", "b[1,0]", "x"}


@pytest.mark.parametrize("text", ["x +", "w*x", "x/y", "x[", "__import__('os')", "x^y"])
def test_rejected_input(text):
    with pytest.raises(ExprError):
        evaluate(text, REG)
