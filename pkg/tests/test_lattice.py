import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsemi.lattice import (
    Box,
    DimensionMismatch,
    OrderMode,
    add,
    as_vec,
    box_to,
    compare,
    leq,
    lt_all,
    lt_neq,
    max_vec,
    min_vec,
    smul,
    sub,
    unit,
    weight,
    zero,
)

vecs = st.integers(min_value=1, max_value=4).flatmap(
    lambda s: st.tuples(*([st.integers(min_value=-20, max_value=20)] * s))
)


def pairs_same_dim():
    return st.integers(min_value=1, max_value=4).flatmap(
        lambda s: st.tuples(
            st.tuples(*([st.integers(-20, 20)] * s)),
            st.tuples(*([st.integers(-20, 20)] * s)),
        )
    )


def test_as_vec_rejects_empty():
    with pytest.raises(ValueError):
        as_vec(())


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        add((1, 2), (1,))


@given(pairs_same_dim())
def test_min_max_are_bounds(ab):
    a, b = ab
    lo, hi = min_vec(a, b), max_vec(a, b)
    assert leq(lo, a) and leq(lo, b)
    assert leq(a, hi) and leq(b, hi)
    assert weight(lo) + weight(hi) == weight(a) + weight(b)


@given(pairs_same_dim())
def test_strict_orders(ab):
    a, b = ab
    # lt_all is strictly stronger than lt_neq
    if lt_all(a, b):
        assert lt_neq(a, b)
    assert lt_neq(a, b) == (leq(a, b) and a != b)
    assert compare(a, b, OrderMode.LT_NEQ) == lt_neq(a, b)
    assert compare(a, b, OrderMode.LT_ALL) == lt_all(a, b)


@given(vecs)
def test_arithmetic_roundtrip(a):
    s = len(a)
    assert add(a, zero(s)) == a
    assert sub(a, a) == zero(s)
    assert smul(3, a) == add(a, add(a, a))
    assert weight(add(a, unit(s, 0))) == weight(a) + 1


def test_box_iteration_is_lex_sorted():
    pts = list(Box((0, 0), (2, 3)))
    assert pts == sorted(pts)
    assert len(pts) == 3 * 4
    assert (1, 2) in Box((0, 0), (2, 3))
    assert (3, 0) not in Box((0, 0), (2, 3))


def test_empty_box():
    assert list(Box((1, 1), (0, 4))) == []
    assert Box((1, 1), (0, 4)).size() == 0


def test_box_to():
    assert list(box_to((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
