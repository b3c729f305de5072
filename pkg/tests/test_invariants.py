from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modinv.certificate import Check
from modinv.fibergraph import FiberDeltas
from modinv.invariants import (
    ChernLocalData,
    ChernNumbers,
    InvariantError,
    ModularInvariants,
    chern_from_local,
    delta_i_lower_bound,
    family_deltas,
    general_genus_bounds,
    genus2_bound_certificate,
    genus2_modular,
    moriwaki_check,
    relative_invariants,
    slope_check,
)
from strategies import nonneg_rationals

F = Fraction


def test_genus2_examples():
    m = genus2_modular(0, F(1, 12))
    assert (m.lambda_, m.kappa, m.delta) == (F(1, 60), F(7, 60), F(1, 12))
    m = genus2_modular(F(1, 3), 0)
    assert (m.lambda_, m.kappa, m.delta) == (F(1, 30), F(1, 15), F(1, 3))
    m = genus2_modular(0, 0)
    assert m.as_dict() == dict.fromkeys(["lambda", "kappa", "delta", "delta0", "delta1"], 0)


def test_negative_deltas_rejected():
    with pytest.raises(InvariantError):
        genus2_modular(-1, 0)


def test_inconsistent_modular_record_rejected():
    with pytest.raises(InvariantError, match="Noether"):
        ModularInvariants(F(1), F(1), F(1), F(1), F(0))


@given(nonneg_rationals(), nonneg_rationals())
def test_noether(d0, d1):
    m = genus2_modular(d0, d1)
    assert 12 * m.lambda_ == m.kappa + m.delta
    assert m.delta == d0 + d1


@given(nonneg_rationals(), nonneg_rationals())
def test_moriwaki_tight_in_genus_two(d0, d1):
    m = genus2_modular(d0, d1)
    chk = moriwaki_check(2, m.lambda_, (d0, d1))
    assert chk.slack == 0 and chk.passed
    # (8g+4) lambda - (g d0 + 4(g-1) d1) at g = 2
    assert 20 * m.lambda_ - (2 * d0 + 4 * d1) == 0


@given(nonneg_rationals(), nonneg_rationals())
def test_slope_holds_in_genus_two(d0, d1):
    m = genus2_modular(d0, d1)
    assert slope_check(2, m.kappa, m.lambda_).passed


def test_slope_examples():
    assert slope_check(2, F(7, 60), F(1, 60)).slack == F(5, 60)
    assert slope_check(2, F(1, 15), F(1, 30)).slack == 0
    assert slope_check(2, 0, 0).passed


def test_family_deltas():
    assert family_deltas([FiberDeltas((0, F(1, 12))), (0, 0), (0, 0)]) == (0, F(1, 12))
    assert family_deltas([]) == (0, 0)
    assert family_deltas([(F(1, 3), 0), (F(1, 3), 0)]) == (F(2, 3), 0)
    with pytest.raises(InvariantError):
        family_deltas([(1, 2, 3)])


ROWS = {
    "F_1(a)": ((2, -4, 7, 0, F(23, 12), F(1, 12), 2), (F(25, 12), F(131, 12), F(13, 12))),
    "F_2(a)": ((1, -2, 5, 1, F(5, 3), F(1, 3), 2), (F(4, 3), F(20, 3), F(2, 3))),
    "F_2(b)": ((1, -1, 4, 0, F(2, 3), F(1, 3), 1), (F(7, 3), F(17, 3), F(2, 3))),
    "zero": ((0, 0, 0, 0, 0, 0, 0), (0, 0, 0)),
}


@pytest.mark.parametrize("name", sorted(ROWS))
def test_chern_from_local(name):
    local, want = ROWS[name]
    c = chern_from_local(ChernLocalData(*local))
    assert (c.c1sq, c.c2, c.chi) == want and c.consistent


def test_beta_mismatch():
    with pytest.raises(InvariantError, match="beta"):
        chern_from_local(ChernLocalData(1, -1, 4, 0, F(2, 3), F(1, 3), 2))


@given(st.integers(0, 20), st.integers(-20, 0), st.integers(0, 40), st.integers(0, 5),
       nonneg_rationals(50, 12), nonneg_rationals(50, 12))
def test_chern_12chi(n, fred2, mu, alpha, bm, bp):
    c = chern_from_local(ChernLocalData(n, fred2, mu, alpha, bm, bp, bm + bp))
    assert 12 * c.chi == c.c1sq + c.c2


@given(nonneg_rationals(), nonneg_rationals(),
       st.lists(st.tuples(nonneg_rationals(), nonneg_rationals()), max_size=6))
def test_relative_noether(d0, d1, pairs):
    m = genus2_modular(d0, d1)
    cherns = [ChernNumbers(a, b, (a + b) / 12) for a, b in pairs]
    assert relative_invariants(m, cherns).noether_defect == 0


def test_example_family_sums():
    lam = genus2_modular(0, F(1, 12))
    r = relative_invariants(lam, [ChernNumbers(F(25, 12), F(131, 12), F(13, 12)),
                                  ChernNumbers(F(4, 5), 4, F(2, 5)), ChernNumbers(2, 4, F(1, 2))])
    assert (r.Kf2, r.chif, r.ef) == (5, 2, 19)


def test_bound_certificate_lambda_case():
    cert = genus2_bound_certificate(genus2_modular(0, F(1, 12)))
    assert cert.passed
    assert set(cert.flags) == {"lambda-minimal", "delta-minimal"}
    assert cert.check("kappa at minimal lambda").tight
    assert not cert.check("kappa").tight


def test_bound_certificate_kappa_case():
    cert = genus2_bound_certificate(genus2_modular(F(1, 3), 0))
    assert cert.passed and cert.flags == ("kappa-minimal",)


def test_bound_certificate_violation_and_isotrivial():
    # not realisable by a fibration, but the certificate must still report it
    m = ModularInvariants(F(1, 100), F(1, 50), F(1, 10), F(1, 10), 0)
    cert = genus2_bound_certificate(m)
    assert not cert.passed and not cert.check("lambda").passed
    assert cert.check("lambda").slack == F(1, 100) - F(1, 60)
    with pytest.raises(InvariantError, match="isotrivial"):
        genus2_bound_certificate(genus2_modular(0, 0))


def test_general_bounds_examples():
    b3 = general_genus_bounds(3)
    assert tuple(b3) == (F(1, 336), F(1, 196), F(1, 126))
    assert b3.lambda_via_min == F(1, 336)
    assert general_genus_bounds(4).kappa == F(1, 192)
    with pytest.raises(InvariantError):
        general_genus_bounds(2)
    with pytest.raises(InvariantError, match="limit"):
        general_genus_bounds(11, max_genus=10)


@pytest.mark.parametrize("g", range(3, 51))
def test_general_bounds_closed_forms(g):
    b = general_genus_bounds(g)
    assert b.lambda_ == F(1, 16 * g * (2 * g + 1))
    assert b.delta == F(1, 4 * (2 * g + 1) ** 2)
    assert b.kappa == F(g - 1, 4 * g * g * (2 * g + 1))
    assert b.lambda_via_min >= b.lambda_


def test_delta_i_bounds():
    assert delta_i_lower_bound(3, 0) == F(1, 36)
    assert delta_i_lower_bound(3, 1) == F(1, 60)
    with pytest.raises(InvariantError):
        delta_i_lower_bound(3, 2)


def test_moriwaki_examples():
    chk = moriwaki_check(3, F(1, 336), (F(1, 36), 0))
    assert (chk.lhs, chk.rhs) == (F(1, 12), F(1, 12))
    assert moriwaki_check(2, 0, (0, 0)).tight
    assert not moriwaki_check(2, 0, (1, 0)).passed
    with pytest.raises(InvariantError):
        moriwaki_check(3, 0, (0,))


def test_check_rendering():
    assert str(Check("x", F(1, 2), F(1, 3))) == "x: 1/2 >= 1/3 (slack 1/6) PASS"
    assert not Check("y", 1, 2, "==").passed
