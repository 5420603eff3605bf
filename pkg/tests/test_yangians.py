import functools

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import ctx, matrix
from qmatkit.ncalg import AlgebraPresentation, NCPolynomial, PresentationError, parse_nc
from qmatkit.scalars import ONE, Q, RationalFunction
from qmatkit.symmetrizers import build_tower
from qmatkit.yangians import (ModeAlphabet, TruncatedSeries, bethe_commutativity, coefficient_pairs,
                              current_elementary, current_power_sum, series_equal, specialized_ratio_check,
                              yangian_det, yangian_relations)


@functools.lru_cache(maxsize=None)
def yang(rn, fn, K, re_type=None):
    R = matrix(rn)
    F = matrix("flip") if fn == "P" else R
    return yangian_relations(R, F, K=K, re_type=re_type)


def el(Y, text):
    return parse_nc(text, Y.pres.alphabet)


def test_mode_alphabet():
    A = ModeAlphabet(2, 2)
    assert A.names() == ["a[1]", "b[1]", "c[1]", "d[1]", "a[2]", "b[2]", "c[2]", "d[2]"]
    assert A.weights() == [1, 1, 1, 1, 2, 2, 2, 2]
    assert A.index(2, 1, 0) == 6
    assert ModeAlphabet(2, 1, re_type=False).names()[:4] == ["a[0]", "b[0]", "c[0]", "d[0]"]


def test_flavor_checks(Ri, Rh, P):
    with pytest.raises(PresentationError):
        yangian_relations(Ri, P, "trigonometric")
    with pytest.raises(PresentationError):
        yangian_relations(Rh, P, "rational")
    with pytest.raises(PresentationError):
        yangian_relations(Ri, Rh)
    assert yangian_relations(Rh, P).flavor == "trigonometric"


def test_no_relations_at_zero_cap(Ri, P):
    Y = yangian_relations(Ri, P, K=0, re_type=True)
    assert Y.pres.relations == [] and Y.pres.alphabet == []


def test_classical_bracket():
    """First modes of the standard Yangian span gl_2: [a1, b1] = b1."""
    Y = yang("flip", "P", 2, True)
    assert Y.reduce(el(Y, "a[1]*b[1] - b[1]*a[1] - b[1]")).zero
    assert not Y.reduce(el(Y, "a[1]*b[1] - b[1]*a[1]")).zero
    assert Y.reduce(el(Y, "a[1]*d[1] - d[1]*a[1]")).zero


def test_forced_unit_degenerates_for_deformed_rtt():
    """With L[0] = I and F = P the linear relations kill b[1] unless R = P."""
    Y = yang("involutive_gl2", "P", 1, True)
    assert Y.reduce(el(Y, "b[1]")).zero
    Y = yang("involutive_gl2", "P", 1)
    assert not Y.alphabet.re_type
    assert not Y.reduce(el(Y, "b[1]")).zero


def test_relations_are_filtered():
    Y = yang("flip", "P", 2, True)
    ws = Y.pres.weights
    for r in Y.pres.relations:
        assert max(sum(ws[g] for g in w) for w in r.terms) <= 3


# -- series -------------------------------------------------------------------

def test_series_shift_rational():
    s = TruncatedSeries([ONE, ONE, RationalFunction(0)], "rational")
    t = s.shifted(1, Q)
    # (u - 1)^-1 = u^-1 + u^-2 + ...
    assert t.coeffs[:3] == [ONE, ONE, ONE]


def test_series_shift_trigonometric():
    s = TruncatedSeries([ONE, ONE, RationalFunction(0)], "trigonometric")
    assert s.shifted(1, Q).coeffs[1] == Q ** 2


@given(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2))
def test_series_shift_composes(k1, k2, c):
    s = TruncatedSeries([ONE] * 5, "rational")
    a = s.shifted(k1, Q).shifted(k2, Q)
    b = s.shifted(k1 + k2, Q)
    assert a.coeffs == b.coeffs


def test_first_modes_with_unit():
    Y = yang("involutive_gl2", "R", 2)
    c = ctx("involutive_gl2", "R")
    e1 = current_elementary(Y, c.tower, c.C_F, 1, 1)
    assert e1.coeffs[0] == NCPolynomial.scalar(2)
    assert e1.coeffs[1] == el(Y, "a[1] + d[1]")
    d = yangian_det(Y, c.cert, 1)
    assert d.coeffs[0] == NCPolynomial.scalar(1) * c.cert.pairing


def test_det_is_e_m_times_factor():
    Y = yang("hecke_gl2", "R", 2)
    c = ctx("hecke_gl2", "R")
    d = yangian_det(Y, c.cert, 2)
    e2 = current_elementary(Y, c.tower, c.C_F, 2, 2)
    factor = Q ** -4
    assert all(series_equal(e2, d.map(lambda x: x * factor), Y))


def test_power_sum_single_trace_form():
    Y = yang("hecke_gl2", "R", 2)
    c = ctx("hecke_gl2", "R")
    full = current_power_sum(Y, c.C_F, 2, 2)
    short = current_power_sum(Y, c.C_F, 2, 2, simplified=True, C_R=c.C_R)
    assert all(series_equal(full, short, Y))
    with pytest.raises(PresentationError):
        current_power_sum(yang("hecke_gl2", "P", 1), c.C_F, 2, 1, simplified=True)


# -- Bethe subalgebra ---------------------------------------------------------

def test_coefficient_pairs():
    assert coefficient_pairs(2, "triangle") == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert len(coefficient_pairs(2, "box")) == 9
    with pytest.raises(ValueError):
        coefficient_pairs(1, "disk")


@pytest.mark.parametrize("rn, fn, cap, order", [
    ("involutive_gl2", "P", 4, 2), ("hecke_gl2", "P", 2, 1), ("involutive_gl2", "R", 2, 1),
    ("hecke_gl2", "R", 2, 1),
])
def test_bethe(rn, fn, cap, order):
    Y = yang(rn, fn, cap)
    c = ctx(rn, fn)
    es = [current_elementary(Y, c.tower, c.C_F, k, order) for k in (1, 2)]
    for a in es:
        for b in es:
            assert bethe_commutativity(Y, a, b, "box")


def test_first_mode_trace_is_invariant():
    Y = yang("flip", "P", 2, True)
    c = ctx("flip", "P")
    e1 = current_elementary(Y, c.tower, c.C_F, 1, 2)
    assert Y.reduce(e1.coeffs[1] * el(Y, "b[1]") - el(Y, "b[1]") * e1.coeffs[1]).zero


def test_non_bethe_witness():
    Y = yang("flip", "P", 4, True)
    c = ctx("flip", "P")
    e1 = current_elementary(Y, c.tower, c.C_F, 1, 2)
    gen = TruncatedSeries([NCPolynomial.scalar(1), NCPolynomial(), el(Y, "b[2]")], "rational")
    v = bethe_commutativity(Y, e1, gen, "box")
    assert not v and v.witness[:2] == (2, 2)


def test_bethe_symmetric_verdict():
    Y = yang("flip", "P", 2, True)
    c = ctx("flip", "P")
    e1 = current_elementary(Y, c.tower, c.C_F, 1, 2)
    gen = TruncatedSeries([NCPolynomial.scalar(1), NCPolynomial(), el(Y, "b[2]")], "rational")
    assert bool(bethe_commutativity(Y, e1, gen, "box")) == bool(bethe_commutativity(Y, gen, e1, "box"))


# -- specialized ratio --------------------------------------------------------

@pytest.mark.parametrize("rn", ["involutive_gl2", "hecke_gl2"])
def test_ratio_check(rn):
    Y = yang(rn, "P", 4)
    R = matrix(rn)
    S = build_tower(R, "symmetric", 2).level(2)
    A = build_tower(R, "skew", 2).level(2)
    assert specialized_ratio_check(Y, 2, S, A)
    empty = AlgebraPresentation(Y.pres.alphabet, [], weights=Y.pres.weights)
    v = specialized_ratio_check(Y, 2, S, A, pres=empty)
    assert not v and v.witness is not None


def test_ratio_check_re_vacuous_low_orders():
    """With L[0] = I the first two orders vanish identically; order 2 is the first real test."""
    R = matrix("hecke_gl2")
    Y = yang("hecke_gl2", "R", 4)
    S = build_tower(R, "symmetric", 2).level(2)
    A = build_tower(R, "skew", 2).level(2)
    assert specialized_ratio_check(Y, 2, S, A)
    empty = AlgebraPresentation(Y.pres.alphabet, [], weights=Y.pres.weights)
    v = specialized_ratio_check(Y, 2, S, A, pres=empty)
    assert v.orders[:2] == [True, True] and not v.orders[2]
