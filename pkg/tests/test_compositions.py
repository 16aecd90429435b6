"""Tests for composition bookkeeping, diagram statistics and markings."""

import pytest
from hypothesis import given, settings, strategies as st

from qtkostka.compositions import (
    MarkedDiagram,
    all_markings,
    arm,
    box_enumeration,
    boxes,
    c_word,
    canonicalize,
    column,
    compositions_of,
    format_composition,
    format_marked,
    lambda_star,
    leg,
    length,
    marking_stats,
    omega_star,
    omega_star_inv,
    pad,
    parse_composition,
    parse_marked,
    partition_length,
    sorting_data,
    weight,
)

comps = st.lists(st.integers(0, 4), max_size=5).map(tuple)


def test_canonicalize():
    assert canonicalize((1, 0, 0)) == (1,)
    assert canonicalize((0, 1, 0)) == (0, 1)
    assert canonicalize(()) == ()
    assert canonicalize([2, 0, 1]) == (2, 0, 1)
    with pytest.raises(ValueError):
        canonicalize((1, -1))


def test_weight_length_pad():
    assert weight((2, 0, 1)) == 3
    assert length(()) == 0
    assert length((0, 1)) == 2
    assert pad((1,), 3) == (1, 0, 0)
    assert pad((1, 2, 3), 3) == (1, 2, 3)
    with pytest.raises(ValueError):
        pad((1, 2, 3), 2)


def test_partition_length():
    # shortest head after which the rest reads as a partition
    assert partition_length(()) == 0
    assert partition_length((3, 1)) == 0
    assert partition_length((1, 1, 1, 1)) == 0
    assert partition_length((0, 2)) == 1
    assert partition_length((0, 0, 0, 4)) == 3
    assert partition_length((2, 0, 1)) == 2


def test_sorting_data():
    sd = sorting_data((0, 2, 1), 3)
    assert sd.images == (3, 1, 2)
    assert sd.inversions == 2
    assert sorting_data((), 3).images == (1, 2, 3)
    assert sorting_data((), 3).inversions == 0
    assert sorting_data((1, 1), 3).inversions == 0  # ties sort stably
    assert sorting_data((0, 1), 2).inversions == 1


def test_arm_leg_column():
    lam = (2, 2, 1)
    assert arm(lam, (1, 1)) == 1
    assert arm(lam, (1, 2)) == 0
    assert leg(lam, (1, 2)) == 1
    assert leg(lam, (2, 2)) == 0
    assert column(lam, (1, 1)) == 3
    with pytest.raises(ValueError):
        arm(lam, (3, 2))
    # composition diagrams: rows above count through lam_k + 1
    assert leg((1, 2), (2, 2)) == 1
    assert leg((1, 2), (2, 1)) == 1


def test_boxes_and_enumeration():
    assert boxes((2, 1)) == [(1, 1), (1, 2), (2, 1)]
    order, cols = box_enumeration((2, 1))
    assert order == [(1, 2), (1, 1), (2, 1)]  # rightmost column first
    assert cols == (1, 2, 2)
    assert c_word((2, 1)) == (1, 2, 2)
    assert c_word(()) == ()


def test_c_word_star_recursion():
    for lam in [(2, 1), (0, 2), (3, 1, 1), (2, 2, 1), (1, 0, 2)]:
        star, m, _ = lambda_star(lam)
        assert m == length(lam)
        assert c_word(lam) == c_word(star) + (length(lam),)


def test_lambda_star():
    star, m, a = lambda_star((2, 1))
    assert star == (0, 2) and m == 2 and a == 1
    star, m, a = lambda_star((0, 2))
    assert star == (1,) and m == 2 and a == 2
    star, m, a = lambda_star((1,))
    assert star == () and m == 1 and a == 1


def test_omega_star_round_trip():
    assert omega_star((1,), 2) == (0, 2)
    assert omega_star((), 2) == (0, 1)
    for lam in [(), (1,), (2, 1), (0, 2, 1)]:
        n = max(len(lam) + 1, 3)
        assert omega_star_inv(omega_star(lam, n), n) == lam
    # the other direction needs a positive last padded part
    assert omega_star(omega_star_inv((1, 1, 2), 3), 3) == (1, 1, 2)
    with pytest.raises(ValueError):
        omega_star_inv((1,), 3)


def test_marked_diagram_validation():
    d = MarkedDiagram((2, 2, 1), frozenset({(1, 2)}))
    assert marking_stats(d) == (1, 2)
    assert marking_stats(MarkedDiagram((2, 2, 1), frozenset({(2, 2)}))) == (1, 1)
    assert marking_stats(MarkedDiagram((2, 2, 1), frozenset())) == (0, 0)
    with pytest.raises(ValueError):
        MarkedDiagram((2, 1), frozenset({(2, 2)}))


def test_all_markings():
    lam = (2, 1)
    ms = list(all_markings(lam))
    assert len(ms) == 2 ** 3
    assert len({format_marked(d) for d in ms}) == len(ms)
    assert all(d.shape == lam for d in ms)


def test_string_forms():
    assert format_composition((2, 0, 1)) == "2,0,1"
    assert parse_composition("2,0,1") == (2, 0, 1)
    assert parse_composition("") == ()
    assert parse_composition("1,0") == (1,)
    with pytest.raises(ValueError):
        parse_composition("1,x")
    d = parse_marked("2,2,1|1.2,2.2")
    assert d.shape == (2, 2, 1) and d.marked == frozenset({(1, 2), (2, 2)})
    assert parse_marked(format_marked(d)) == d
    assert parse_marked("2,1|") == MarkedDiagram((2, 1), frozenset())


def test_compositions_of():
    assert compositions_of(0, 3) == [()]
    assert set(compositions_of(2, 2)) == {(2,), (1, 1), (0, 2)}
    assert len(compositions_of(4, 4)) == 35
    for lam in compositions_of(3, 4):
        assert weight(lam) == 3 and length(lam) <= 4
        assert canonicalize(lam) == lam


@given(comps)
@settings(max_examples=100, deadline=None)
def test_canonicalize_idempotent(raw):
    lam = canonicalize(raw)
    assert canonicalize(lam) == lam
    assert weight(lam) == sum(raw)
    assert parse_composition(format_composition(lam)) == lam


@given(comps, st.integers(2, 6))
@settings(max_examples=100, deadline=None)
def test_omega_star_inverts(raw, extra):
    lam = canonicalize(raw)
    n = max(len(lam) + 1, extra)
    assert omega_star_inv(omega_star(lam, n), n) == lam
