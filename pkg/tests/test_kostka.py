"""Tests for the stable pairing, Kostka values, markings, oracles and the scanner."""

import json

import pytest

from qtkostka.coeffs import CoeffPoly, ConsistencyError, NonExactDivision, ONE, V, ZERO
from qtkostka.compositions import (
    MarkedDiagram,
    all_markings,
    compositions_of,
    format_marked,
    parse_marked,
)
from qtkostka.kl import kl_element
from qtkostka.kostka import (
    MSymExpansion,
    MSymmetryViolation,
    charge_oracle,
    kostka,
    kostka_q0_check,
    kostka_via_schur,
    marked_decomposition_check,
    marked_kostka,
    msym_basis,
    msym_expand,
    pair,
    pair_truncated,
    psi_e_polynomial,
    scan,
    schur_z,
)
from qtkostka.macdonald import e_tilde
from qtkostka.parabolic import ModuleElement
from qtkostka.polyrep import to_module

T = CoeffPoly.t_power(1)
Q = CoeffPoly.q_power(1)


def test_msym_basis():
    assert msym_basis((1,), 0, 2) == ModuleElement.basis((1,), 2) + ModuleElement.basis(
        (0, 1), 2
    ).scale(V)
    # head fixed, only the tail spreads
    x = msym_basis((2, 1), 1, 3)
    assert x.support() == {(2, 1), (2, 0, 1)}
    assert x.coefficient((2, 1)) == ONE


def test_msym_expand_round_trip():
    el = kl_element((2,), 3).element
    exp = msym_expand(el, 0)
    total = ModuleElement.zero(3)
    for tau, c in exp.terms.items():
        total = total + msym_basis(tau, 0, 3).scale(c)
    assert total == el


def test_msym_expand_rejects_asymmetric():
    x = ModuleElement.basis((1,), 3)
    with pytest.raises(MSymmetryViolation):
        msym_expand(x, 0)


def test_pair_needs_divisible_coefficients():
    x = MSymExpansion(0, 3, {(1, 1): ONE})
    with pytest.raises(NonExactDivision):
        pair(x, x)


def test_pair_truncated_geometric():
    a = msym_basis((1,), 0, 3)
    assert pair_truncated(a, a) == ONE + T + T * T


def test_weight2_table():
    assert kostka((2,), (2,)).value == ONE
    assert kostka((2,), (1, 1)).value == T
    assert kostka((1, 1), (2,)).value == Q
    assert kostka((1, 1), (1, 1)).value == ONE


def test_reference_value_31_22():
    res = kostka((3, 1), (2, 2))
    assert res.value == T + T * Q + T * T * Q
    assert res.is_polynomial_in_v and res.is_nonneg


def test_zero_on_weight_mismatch():
    assert kostka((2,), (1,)).value == ZERO
    assert kostka((), ()).value == ONE


def test_result_metadata():
    res = kostka((2,), (1, 1))
    assert res.lam == (2,) and res.mu == (1, 1)
    assert res.m >= 2 and res.rank >= res.m + 2
    assert res.is_polynomial_in_v and res.is_nonneg


def test_q0_reproduces_kl():
    for lam in [(2,), (1, 1), (0, 1), (2, 1)]:
        assert kostka_q0_check(lam), lam
    assert kostka_q0_check((3,), max_len=3)


def test_charge_oracle():
    assert charge_oracle((1,), (1,)) == ONE
    assert charge_oracle((2,), (1, 1)) == T
    assert charge_oracle((1, 1), (1, 1)) == ONE
    assert charge_oracle((2, 1), (1, 1, 1)) == T + T * T
    assert charge_oracle((3,), (1, 1, 1)) == T * T * T
    assert charge_oracle((2, 1), (2, 1)) == ONE  # K at lam == mu is always 1
    assert charge_oracle((1, 1), (2,)) == ZERO


def test_q0_matches_charge():
    for lam, mu in [
        ((2,), (1, 1)),
        ((2, 1), (1, 1, 1)),
        ((2, 1), (2, 1)),
        ((3,), (2, 1)),
    ]:
        assert kostka(lam, mu).value.specialize_q0() == charge_oracle(lam, mu)


def test_schur_route():
    f = schur_z((1, 1), 3)
    assert f.coefficient((1, 1)) == ONE
    assert f.coefficient((1, 0, 1)) == ONE
    assert f.coefficient((2,)) == ZERO
    for lam in [(2,), (1, 1)]:
        for mu in [(2,), (1, 1)]:
            assert kostka_via_schur(lam, mu) == kostka(lam, mu).value, (lam, mu)
    assert kostka_via_schur((2, 1), (2, 1)) == kostka((2, 1), (2, 1)).value


def test_marked_values_22():
    # weight-4 reference table: shape (2,2) against lambda (3,1)
    vals = {}
    for d in all_markings((2, 2)):
        v = marked_kostka((3, 1), d)
        if not v.is_zero():
            vals[format_marked(d)] = v
    assert vals == {
        "2,2|": T,
        "2,2|1.2": T * T,
        "2,2|2.2": T,
    }
    assert marked_decomposition_check((3, 1), (2, 2))


def test_marked_table_221():
    vals = {}
    for d in all_markings((2, 2, 1)):
        v = marked_kostka((3, 1, 1), d)
        if not v.is_zero():
            vals[format_marked(d)] = v
    assert vals == {
        "2,2,1|": T,
        "2,2,1|1.2": T * T + T * T * T,
        "2,2,1|2.2": T + T * T,
        "2,2,1|1.2,2.2": T * T * T,
    }


def test_marked_decomposition():
    for lam, mu in [((2,), (1, 1)), ((1, 1), (1, 1)), ((2, 1), (1, 1, 1))]:
        assert marked_decomposition_check(lam, mu), (lam, mu)


def test_marked_weight_mismatch():
    with pytest.raises(ValueError):
        marked_kostka((2,), MarkedDiagram((1,), frozenset()))


def test_psi_e_polynomial():
    for d in range(4):
        for mu in compositions_of(d, 3):
            assert psi_e_polynomial(mu), mu


def test_scan_smoke(tmp_path):
    report_path = tmp_path / "report.json"
    csv_path = tmp_path / "values.csv"
    rep = scan(2, report_path=str(report_path), csv_path=str(csv_path))
    assert rep["format"] == 1
    assert rep["max_weight"] == 2
    assert rep["pairs"] == 14
    assert rep["violations"] == []
    assert rep["min_v_exponent_observed"] == 0
    assert set(rep["timings"]) == {"kostka", "conjectures", "mpart", "q0_kl", "total"}
    on_disk = json.loads(report_path.read_text())
    assert on_disk == json.loads(json.dumps(rep))
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "lambda,mu,kostka"
    assert len(lines) == 1 + 14


def test_scan_cache_resume(tmp_path):
    cache = tmp_path / "cache"
    first = scan(2, cache_dir=str(cache))
    assert any(cache.iterdir())
    second = scan(2, cache_dir=str(cache))
    assert first["pairs"] == second["pairs"] == 14
    assert second["violations"] == []


def test_scan_length_bound():
    rep = scan(2, max_len=1, marked=False)
    # only (), (1) and (2) fit in one slot
    assert rep["pairs"] == 3
    assert rep["violations"] == []
