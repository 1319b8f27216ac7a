"""Exact scalar field: canonical form, arithmetic, printing, evaluation."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlbox.scalars import (
    DELTA,
    ONE,
    ZERO,
    PoleError,
    Scalar,
    evaluate_numeric,
    parse_scalar,
    scalar_arithmetic,
)

d = DELTA


def poly(*cs: int) -> Scalar:
    return Scalar(tuple(cs))


# -- hand-pinned arithmetic -------------------------------------------------


def test_monomial_product():
    assert scalar_arithmetic(d, d, "mul") == poly(0, 0, 1)


def test_factorization_identity():
    assert scalar_arithmetic(poly(-1, 0, 1), poly(-1, 1), "div") == poly(1, 1)


def test_common_denominator_add():
    inv = ONE / d
    assert scalar_arithmetic(inv, inv, "add") == Scalar((2,), (0, 1))


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_arithmetic(ONE, ZERO, "div")
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_zero_is_unique():
    a = poly(0, 1) - poly(0, 1)
    assert a == ZERO
    assert a.num == (0,) and a.den == (1,)
    assert not a


def test_denominator_sign_normalized():
    a = Scalar((1,), (-1, -1))
    assert a.den[-1] > 0
    assert a == Scalar((-1,), (1, 1))


def test_reduction_cancels_content():
    a = Scalar((2, 2), (4,))
    assert a == Scalar((1, 1), (2,))


# -- numeric evaluation --------------------------------------------------------


def test_evaluate_polynomial():
    assert evaluate_numeric(poly(0, 1, 1), 2.0) == pytest.approx(6.0)


def test_evaluate_pole():
    with pytest.raises(PoleError):
        evaluate_numeric(ONE / poly(-1, 1), 1.0)


def test_evaluate_cancellation():
    a = Scalar.delta_power(-2) * Scalar.delta_power(2)
    assert a == ONE
    assert evaluate_numeric(a, 0.37) == pytest.approx(1.0)


# -- printing and parsing --------------------------------------------------------


@pytest.mark.parametrize(
    "value, text",
    [
        (ZERO, "0"),
        (ONE, "1"),
        (Scalar.from_int(-3), "-3"),
        (d, "d"),
        (poly(1, 1), "1 + d"),
        (poly(-1, 0, 1), "-1 + d^2"),
        (poly(0, 2), "2*d"),
        (Scalar((2,), (0, 1)), "2/d"),
        (Scalar((1,), (0, 0, 1)), "1/d^2"),
        (Scalar((1, 1), (0, 1)), "(1 + d)/d"),
        (Scalar((1,), (-1, 1)), "1/(-1 + d)"),
        (Scalar((1,), (0, 2)), "1/(2*d)"),
        (Scalar((0, -5, 0, 7), (3, 1)), "(-5*d + 7*d^3)/(3 + d)"),
    ],
)
def test_render_pinned(value, text):
    assert value.render() == text
    assert parse_scalar(text) == value


coeffs = st.lists(st.integers(-30, 30), min_size=1, max_size=5)


def scalars_strategy():
    return st.builds(
        lambda n, m: Scalar(tuple(n), tuple(m)),
        coeffs,
        coeffs.filter(lambda cs: any(cs)),
    )


@given(scalars_strategy())
def test_render_round_trip(a):
    assert parse_scalar(a.render()) == a


@given(scalars_strategy())
def test_doc_round_trip(a):
    assert Scalar.from_doc(a.to_doc()) == a


# -- field axioms -----------------------------------------------------------------


@given(scalars_strategy(), scalars_strategy(), scalars_strategy())
@settings(max_examples=60)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(scalars_strategy(), scalars_strategy())
@settings(max_examples=60)
def test_evaluate_is_ring_hom(a, b):
    x = 1.7362
    try:
        av, bv = a.evaluate(x), b.evaluate(x)
        sv = (a + b).evaluate(x)
        pv = (a * b).evaluate(x)
    except PoleError:
        return
    assert sv == pytest.approx(av + bv, rel=1e-10, abs=1e-10)
    assert pv == pytest.approx(av * bv, rel=1e-10, abs=1e-10)


def test_hash_consistent_with_eq():
    a = Scalar((2, 2), (2,))
    b = poly(1, 1)
    assert a == b and hash(a) == hash(b)
