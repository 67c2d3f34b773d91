# -*- coding: utf-8 -*-
#
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from contracta.certificates import triple_library, zeta_library
from contracta.errors import ExpressionEvaluationError, ExpressionSyntaxError, UsageError
from contracta.expr import (
    MAX_NESTING,
    MAX_TREE_DEPTH,
    Binary,
    Chain,
    Constant,
    Expression,
    Unary,
    Variable,
    evaluate,
    parse,
    to_source,
)
from contracta.expr.nodes import BINARY_FUNCTIONS, UNARY_FUNCTIONS

TS = ('t', 's')


def test_parse_simulation_function():
    e = parse("0.5*s - t", TS)
    assert e.root == Binary('-', Binary('*', Constant(0.5), Variable('s', 1)), Variable('t', 0))
    assert e.evaluate((1.0, 3.0)) == 0.5
    assert evaluate(e, [1, 3]) == 0.5
    assert e(1.0, 3.0) == 0.5


def test_parse_function_call():
    e = parse("cos(x1)", ('x1',))
    assert e.root == Unary('cos', Variable('x1', 0))
    assert e.evaluate((0.0,)) == 1.0


def test_power_is_right_associative():
    assert parse("2^3^2", ()).evaluate(()) == 512.0
    assert parse("(2^3)^2", ()).evaluate(()) == 64.0


def test_power_binds_tighter_than_unary_minus():
    assert parse("-2^2", ()).evaluate(()) == -4.0
    assert parse("(-2)^2", ()).evaluate(()) == 4.0
    assert parse("2^-1", ()).evaluate(()) == 0.5


def test_precedence():
    assert parse("1 + 2*3", ()).evaluate(()) == 7.0
    assert parse("(1 + 2)*3", ()).evaluate(()) == 9.0
    assert parse("8/4/2", ()).evaluate(()) == 1.0
    assert parse("10 - 4 - 3", ()).evaluate(()) == 3.0
    assert parse("--3", ()).evaluate(()) == 3.0


def test_binary_functions_and_constants():
    assert parse("min(1, x1^2)", ('x1',)).evaluate((3.0,)) == 1.0
    assert parse("max(t, s)", TS).evaluate((1.0, 2.0)) == 2.0
    assert parse("pi", ()).evaluate(()) == math.pi
    assert parse("e", ()).evaluate(()) == math.e
    assert parse("ln(e)", ()).evaluate(()) == pytest.approx(1.0)
    assert parse("sqrt(16) + abs(-2)", ()).evaluate(()) == 6.0


def test_number_literals():
    assert parse("1e-3", ()).evaluate(()) == 1e-3
    assert parse(".5", ()).evaluate(()) == 0.5
    assert parse("2.", ()).evaluate(()) == 2.0
    assert parse("3E+2", ()).evaluate(()) == 300.0


def test_empty_source():
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("   ", ('x',))
    assert exc.value.position == 0


def test_syntax_error_positions():
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("1 +", ('x',))
    assert exc.value.position == 3
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("x $ 2", ('x',))
    assert exc.value.position == 2
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("(x + 1", ('x',))
    assert exc.value.position == 6
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("x 2", ('x',))
    assert exc.value.position == 2


def test_syntax_error_message_shows_caret():
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("t + y", TS)
    text = str(exc.value)
    assert "'y'" in text
    assert "position 4" in text
    assert "\t    ^" in text


def test_unknown_names_and_arity():
    with pytest.raises(ExpressionSyntaxError):
        parse("x + y", ('x',))
    with pytest.raises(ExpressionSyntaxError):
        parse("sin x", ('x',))
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("min(x)", ('x',))
    assert "expects 2 arguments" in exc.value.message
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse("cos(x, x)", ('x',))
    assert "expects 1 argument" in exc.value.message


def test_bad_signatures():
    with pytest.raises(UsageError):
        parse("x", ('x', 'x'))
    with pytest.raises(UsageError):
        parse("1", ('sin',))
    with pytest.raises(UsageError):
        parse("1", ('2x',))
    with pytest.raises(UsageError):
        parse(3, ('x',))


def test_depth_limits():
    deep = "x + (" * (MAX_TREE_DEPTH + 5) + "x" + ")" * (MAX_TREE_DEPTH + 5)
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse(deep, ('x',))
    assert "deeper" in exc.value.message
    nested = "(" * 200 + "x" + ")" * 200
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse(nested, ('x',))
    assert "nests too deeply" in exc.value.message
    redundant = "(" * MAX_NESTING + "x" + ")" * MAX_NESTING
    assert parse(redundant, ('x',)).root == Variable('x', 0)
    ok = "x + (" * (MAX_TREE_DEPTH - 2) + "x" + ")" * (MAX_TREE_DEPTH - 2)
    assert parse(ok, ('x',)).evaluate((1.0,)) == float(MAX_TREE_DEPTH - 1)


def test_long_chains_are_flat():
    terms = MAX_TREE_DEPTH * 4
    e = parse("x" + " + x" * (terms - 1), ('x',))
    assert isinstance(e.root, Chain)
    assert e.root.depth == 2
    assert e.evaluate((1.0,)) == float(terms)
    product = parse("x" + " * x" * 199 + " - 1 - 1 - 1", ('x',))
    assert product.root.depth == 3
    assert product.evaluate((1.0,)) == -2.0
    # folding is left to right, as for nested binary operators
    assert parse("8 / 2 / 2 / 2", ()).evaluate(()) == 1.0
    assert parse("1 - 2 - 3 - 4", ()).evaluate(()) == -8.0
    assert parse("1 - 2 - 3", ()).root == Chain(Constant(1.0), (('-', Constant(2.0)), ('-', Constant(3.0))))
    again = parse(e.to_source(), ('x',))
    assert again == e
    with pytest.raises(ExpressionEvaluationError) as exc:
        parse("x * 1e300 * 1e300 * x", ('x',)).evaluate((1.0,))
    assert exc.value.node == "(x * 1e+300 * 1e+300)"


def test_long_input_parses_or_fails_with_position():
    source = "x + " * 16384 + "x"
    assert len(source) >= 64 * 1024
    assert parse(source, ('x',)).evaluate((0.5,)) == 16385 * 0.5
    truncated = "x + " * 16384
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse(truncated, ('x',))
    assert exc.value.position == len(truncated)


def test_evaluation_errors():
    with pytest.raises(ExpressionEvaluationError) as exc:
        parse("ln(t)", ('t',)).evaluate((0.0,))
    assert exc.value.node == "ln(t)"
    with pytest.raises(ExpressionEvaluationError):
        parse("1/x", ('x',)).evaluate((0.0,))
    with pytest.raises(ExpressionEvaluationError):
        parse("x^0.5", ('x',)).evaluate((-1.0,))
    with pytest.raises(ExpressionEvaluationError):
        parse("exp(x)", ('x',)).evaluate((1000.0,))
    with pytest.raises(ExpressionEvaluationError):
        parse("sqrt(x)", ('x',)).evaluate((-4.0,))
    with pytest.raises(ExpressionEvaluationError):
        parse("x*1e308*10", ('x',)).evaluate((1.0,))
    # integer exponents of a negative base are fine
    assert parse("x^3", ('x',)).evaluate((-2.0,)) == -8.0


def test_value_count_must_match_signature():
    with pytest.raises(UsageError):
        parse("t - s", TS).evaluate((1.0,))


def test_to_source_is_fully_parenthesized():
    assert to_source(parse("0.5*s - t", TS)) == "((0.5 * s) - t)"
    assert to_source(parse("-x^2", ('x',))) == "(-(x ^ 2.0))"
    assert to_source(parse("min(x, pi)", ('x',))) == "min(x, pi)"


def test_library_expressions_round_trip_bit_exact():
    grid = [1e-3, 0.1, 0.5, 1.0, 2.5, 10.0]
    for zeta in zeta_library().values():
        e = zeta.zeta
        again = parse(e.to_source(), e.signature)
        assert again == e
        for t in grid:
            for s in grid:
                assert again.evaluate((t, s)) == e.evaluate((t, s))
    for triple in triple_library().values():
        for e in (triple.psi, triple.alpha, triple.beta):
            again = parse(e.to_source(), e.signature)
            assert again == e
            for t in grid:
                assert again.evaluate((t,)) == e.evaluate((t,))


def _trees(signature):
    leaves = st.one_of(
        st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False).map(abs).map(Constant),
        st.sampled_from([Constant(math.pi, 'pi'), Constant(math.e, 'e')]),
        st.sampled_from([Variable(name, i) for i, name in enumerate(signature)]),
    )
    ops = st.sampled_from(['+', '-', '*', '/', '^'] + sorted(BINARY_FUNCTIONS))

    def extend(children):
        return st.one_of(
            st.builds(Unary, st.sampled_from(sorted(UNARY_FUNCTIONS)), children),
            st.builds(Binary, ops, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=24)


@settings(max_examples=300, deadline=None)
@given(_trees(TS))
def test_print_then_parse_is_identity(root):
    assume(root.depth <= 32)
    e = Expression(root, TS)
    again = parse(e.to_source(), TS)
    assert again == e
    for values in ((0.5, 2.0), (1.0, 1.0), (3.0, 0.25)):
        try:
            expected = e.evaluate(values)
        except ExpressionEvaluationError:
            with pytest.raises(ExpressionEvaluationError):
                again.evaluate(values)
            continue
        assert again.evaluate(values) == expected


FUZZ_ALPHABET = "xts0123456789.eE+-*/^(), minsqrtlncoabp"


def check_parse_total(source):
    try:
        e = parse(source, ('x',))
    except ExpressionSyntaxError as err:
        assert 0 <= err.position <= len(source)
        return
    try:
        value = e.evaluate((0.5,))
    except ExpressionEvaluationError:
        return
    assert math.isfinite(value)


@settings(max_examples=10000, deadline=None)
@given(st.text(alphabet=FUZZ_ALPHABET, max_size=256))
def test_parser_never_crashes(source):
    check_parse_total(source)


@st.composite
def long_sources(draw):
    fragment = draw(st.text(alphabet=FUZZ_ALPHABET, min_size=1, max_size=64))
    repeats = draw(st.integers(min_value=1, max_value=64 * 1024 // len(fragment)))
    tail = draw(st.text(alphabet=FUZZ_ALPHABET, max_size=16))
    return (fragment * repeats + tail)[: 64 * 1024]


@settings(max_examples=200, deadline=None)
@given(long_sources())
def test_parser_never_crashes_on_long_input(source):
    check_parse_total(source)


if __name__ == "__main__":
    test_parse_simulation_function()
    test_power_is_right_associative()
    test_power_binds_tighter_than_unary_minus()
    test_syntax_error_positions()
    test_evaluation_errors()
    test_library_expressions_round_trip_bit_exact()
