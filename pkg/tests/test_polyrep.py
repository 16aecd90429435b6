"""Tests for the polynomial representation and the Cherednik operators."""

import pytest
from hypothesis import given, settings, strategies as st

from qtkostka.coeffs import CoeffPoly, ONE, V, VINV, ZERO
from qtkostka.compositions import compositions_of, pad, sorting_data
from qtkostka.macdonald import e_monomial
from qtkostka.parabolic import ModuleElement, bar_d
from qtkostka.polyrep import (
    ZPoly,
    bar_polynomial,
    cherednik_xi,
    from_module,
    to_module,
    xi_eigenvalue,
)

T = CoeffPoly.t_power(1)
Q = CoeffPoly.q_power(1)

coeffs = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-1, 1)),
    st.integers(-3, 3),
    max_size=3,
).map(CoeffPoly)


def zpolys(rank):
    keys = st.lists(st.integers(0, 3), min_size=0, max_size=rank).map(tuple)
    return st.dictionaries(keys, coeffs, max_size=3).map(
        lambda d: sum(
            (ZPoly.monomial(k, rank, c) for k, c in d.items()), ZPoly.zero(rank)
        )
    )


def test_constructors():
    one = ZPoly.one(3)
    assert one.coefficient(()) == ONE
    assert one == ZPoly.monomial((), 3)
    assert ZPoly.zero(3).is_zero()
    assert ZPoly.monomial((1, 0), 3).coefficient((1,)) == ONE
    with pytest.raises(ValueError):
        ZPoly.monomial((1, 2, 3, 4), 3)


def test_swap_vars():
    f = ZPoly.monomial((1, 2), 3)
    assert f.swap_vars(1) == ZPoly.monomial((2, 1), 3)
    assert f.swap_vars(2) == ZPoly.monomial((1, 0, 2), 3)
    assert f.swap_vars(1).swap_vars(1) == f


def test_hecke_action_on_polynomials():
    # symmetric polynomials are v^{-1}-eigenvectors
    f = ZPoly.monomial((1, 1), 2)
    assert f.hi(1) == f.scale(VINV)
    g = ZPoly.monomial((1,), 2) + ZPoly.monomial((0, 1), 2)
    assert g.hi(1) == g.scale(VINV)


def test_quadratic_and_braid():
    f = ZPoly.monomial((2, 0, 1), 3)
    for i in (1, 2):
        assert f.hi(i).hi(i) == f.hi(i).scale(VINV - V) + f
        assert f.hi(i).hi_inv(i) == f
    assert f.hi(1).hi(2).hi(1) == f.hi(2).hi(1).hi(2)


def test_omega_tilde():
    f = ZPoly.monomial((1, 0, 2), 3)
    assert f.omega_tilde() == ZPoly.monomial((0, 2, 1), 3, Q.bar())
    assert f.omega_tilde().omega_tilde_inv() == f
    assert f.omega_tilde_inv().omega_tilde() == f
    # rotation lowers Hecke indices, same as on the module side
    assert f.hi(2).omega_tilde() == f.omega_tilde().hi(1)


def test_projection_relation():
    # projecting after the rotation turns H_{n-1} into the scalar v^{-1}
    f = ZPoly.monomial((1, 0, 2), 3) + ZPoly.monomial((0, 1, 1), 3).scale(T)
    assert f.hi(2).omega_tilde().project() == f.omega_tilde().project().scale(VINV)
    g = ZPoly.monomial((1, 2), 3) + ZPoly.monomial((0, 0, 2), 3)
    assert g.project() == ZPoly.monomial((1, 2), 2)


def test_psi_intertwines_hecke_action():
    f = ZPoly.monomial((1, 0, 2), 3) + ZPoly.monomial((0, 1, 1), 3).scale(T)
    for i in (1, 2):
        assert to_module(f.hi(i)) == to_module(f).hi(i)
    assert from_module(to_module(f)) == f
    x = ModuleElement.basis((2, 1), 3) + ModuleElement.basis((0, 2), 3).scale(V)
    assert to_module(from_module(x)) == x


def test_psi_unitriangular():
    for d in range(4):
        for lam in compositions_of(d, 3):
            x = to_module(ZPoly.monomial(lam, 3))
            lead = CoeffPoly.v_power(-sorting_data(lam, 3).inversions)
            assert x.coefficient(lam) == lead, lam


def test_bar_polynomial_matches_module_bar():
    f = ZPoly.monomial((1, 0, 2), 3) + ZPoly.monomial((0, 1, 1), 3).scale(V + Q)
    assert to_module(bar_polynomial(f)) == bar_d(to_module(f))
    assert bar_polynomial(bar_polynomial(f)) == f


def test_cherednik_eigenvalues():
    for lam in [(), (1,), (2,), (1, 1), (0, 1)]:
        E = e_monomial(lam, 3)
        p = pad(lam, 3)
        w = sorting_data(lam, 3).images
        for i in (1, 2, 3):
            ev = xi_eigenvalue(lam, 3, i)
            assert ev == CoeffPoly.monomial(1, 2 * (1 - w[i - 1]), p[i - 1])
            assert cherednik_xi(E, i) == E.scale(ev), (lam, i)


def test_xi_on_constants():
    one = ZPoly.one(3)
    for i in (1, 2, 3):
        assert cherednik_xi(one, i) == one.scale(CoeffPoly.t_power(1 - i))


def test_json_round_trip():
    f = ZPoly.monomial((1, 2), 3, ONE - T * Q) + ZPoly.monomial((0, 0, 1), 3, V)
    assert ZPoly.from_json(f.to_json()) == f


def test_pretty():
    f = ZPoly.monomial((1,), 2, ONE - T * Q) + ZPoly.monomial((0, 1), 2, ONE - T)
    assert f.pretty() == "(1 - t*q)*z_1 + (1 - t)*z_2"
    assert ZPoly.one(2).pretty() == "1"
    assert ZPoly.zero(2).pretty() == "0"


@given(zpolys(3), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_hecke_random(f, i):
    assert f.hi(i).hi_inv(i) == f
    assert to_module(f.hi(i)) == to_module(f).hi(i)


@given(zpolys(3))
@settings(max_examples=60, deadline=None)
def test_psi_round_trip_random(f):
    assert from_module(to_module(f)) == f
    assert ZPoly.from_json(f.to_json()) == f
