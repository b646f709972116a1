import pytest
from hypothesis import given, settings, strategies as st

from geolrc.exprs import POLE, ExprSyntaxError, RatExpr, evaluate, parse
from geolrc.gf import make_field

F16 = make_field(2, 4)
F7 = make_field(7)


def _horner_oracle(F, terms, x, y):
    """Direct sum of c * x^i * y^j, independent of the parser."""
    acc = 0
    for c, i, j in terms:
        acc = F.add(acc, F.mul(c, F.mul(F.pow(x, i), F.pow(y, j))))
    return acc


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from([F16, F7]),
    st.lists(st.tuples(st.integers(1, 15), st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=5),
    st.data(),
)
def test_polynomial_evaluation_matches_oracle(F, raw_terms, data):
    terms = [(c % F.q or 1, i, j) for c, i, j in raw_terms]
    text = " + ".join(f"{F.format(c)}*x^{i}*y^{j}" if F.m == 1 else f"({F.format(c)})*x^{i}*y^{j}" for c, i, j in terms)
    e = parse(text, F)
    x = data.draw(st.integers(0, F.q - 1))
    y = data.draw(st.integers(0, F.q - 1))
    assert e.eval_code({"x": x, "y": y}) == _horner_oracle(F, terms, x, y)


def test_implicit_multiplication():
    e = parse("a^2x^2z + xyz", F16)
    a = F16.parse("a")
    for x, y, z in [(1, 2, 3), (5, 0, 7), (15, 15, 15)]:
        expected = F16.add(F16.mul(F16.pow(a, 2), F16.mul(F16.mul(x, x), z)), F16.mul(F16.mul(x, y), z))
        assert e.eval_code({"x": x, "y": y, "z": z}) == expected
    assert parse("2x", F7).eval_code({"x": 3}) == 6
    assert parse("(x+1)(x-1)", F7).eval_code({"x": 3}) == 1


def test_pole_detection():
    e = parse("(x + 1)/(x^2 + 1)", F16)
    assert e.eval_code({"x": 1}) is None
    assert e(x=F16(1)) is POLE
    assert e.eval_code({"x": 0}) == 1
    # no cancellation is attempted: 0/0 is a pole
    assert parse("x/x", F7).eval_code({"x": 0}) is None
    assert parse("x/x", F7).eval_code({"x": 3}) == 1


def test_negative_and_rational_powers():
    e = parse("x^-2 + 1/y", F7)
    assert e.eval_code({"x": 3, "y": 2}) == F7.add(F7.inv(F7.mul(3, 3)), F7.inv(2))


def test_operators_and_substitution():
    x = RatExpr.var(F7, "x")
    y = RatExpr.var(F7, "y")
    e = (x + 2 * y) ** 2 / (x - y)
    assert e.variables() == frozenset("xy")
    assert e.eval_code({"x": 5, "y": 1}) == F7.div(F7.pow(7 % 7, 2), 4)
    sub = e.substitute({"y": RatExpr.const(F7, 1)})
    assert sub.variables() == frozenset("x")
    assert sub.eval_code({"x": 5}) == e.eval_code({"x": 5, "y": 1})
    assert parse(str(e), F7).eval_code({"x": 4, "y": 6}) == e.eval_code({"x": 4, "y": 6})


def test_evaluate_accepts_field_elements():
    e = parse("x^3 + a", F16)
    assert evaluate(e, {"x": F16("a")}) == F16("a^3 + a")


@pytest.mark.parametrize("bad", ["x +", "(x", "x ^ y", "x $ 1", "", "x)"])
def test_syntax_errors(bad):
    with pytest.raises(ExprSyntaxError):
        parse(bad, F7)


def test_generator_only_in_extension_fields():
    with pytest.raises(Exception):
        parse("a*x", F7)


def test_unbound_variable():
    with pytest.raises(KeyError):
        parse("x + y", F7).eval_code({"x": 1})
