from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supermac.qt import ONE, Q, T, ZERO, PoleAtEvaluationPoint, RationalQT, format_poly, parse_qt, q_factorial, q_int


def test_common_factor_cancels():
    assert (Q * Q - Q * T) / (Q - T) == Q


def test_coprime_fraction_kept():
    r = (1 - Q * T) / (1 - T)
    assert not r.is_polynomial()
    assert r * (1 - T) == 1 - Q * T


def test_content_reduction():
    r = (2 * Q) / 4
    assert r == Q / 2
    assert str(r) == "q/2"


def test_evaluate():
    assert (Q * (1 - T) / (1 - Q * T)).evaluate(0, 0) == 0
    assert ((1 - Q * T) / (1 - T)).evaluate(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 4)
    with pytest.raises(PoleAtEvaluationPoint):
        (ONE / (1 - T)).evaluate(0, 1)


def test_bar_and_swap():
    assert Q.bar() == ONE / Q
    assert ((1 - Q * T) / (1 - T)).bar() == (Q * T - 1) / (Q * (T - 1))
    assert RationalQT(5).bar() == RationalQT(5)
    assert (Q + Q * T + Q * Q * T).swap_qt() == T + Q * T + Q * T * T
    assert ((1 - Q) / (1 - T)).swap_qt() == (1 - T) / (1 - Q)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_t_integers():
    assert q_int(3) == 1 + T + T * T
    assert q_factorial(3) == q_int(2) * q_int(3)


def test_parse_table_cells():
    assert parse_qt("1+qt+q^2t") == 1 + Q * T + Q * Q * T
    assert parse_qt("q^{10}t^2") == RationalQT.monomial(10, 2)
    assert parse_qt("(1-q)/(1-t)") == (1 - Q) / (1 - T)


polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-5, 5).filter(bool), max_size=5
)


@given(polys)
def test_format_parse_round_trip(terms):
    p = RationalQT.from_terms(terms)
    for latex in (False, True):
        assert parse_qt(format_poly(p, latex=latex)) == p


@given(polys, polys.filter(bool))
def test_json_round_trip(a, b):
    r = RationalQT.from_terms(a) / RationalQT.from_terms(b)
    assert RationalQT.from_json(r.to_json()) == r


@given(polys, polys, polys)
def test_field_axioms(a, b, c):
    x, y, z = (RationalQT.from_terms(d) for d in (a, b, c))
    assert (x + y) * z == x * z + y * z
    assert (x * y).bar() == x.bar() * y.bar()
    if not y.is_zero():
        assert (x / y) * y == x
