import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import ctx, matrix, nonzero_rationals
from qmatkit.ncalg import NCPolynomial, PresentationError, is_central, parse_nc
from qmatkit.qdet import (alpha, canonical_det, cayley_hamilton, char_poly_expand, check_trace_reduction,
                          context, elementary_symmetric, group_like_check, inverse_expression, m_matrix,
                          newton_coefficients, power_sum, quantum_det, symmetric_commute)
from qmatkit.scalars import ONE, Q, q_number
from qmatkit.tensorspace import TensorOperator, kron

NAMES = ["a", "b", "c", "d"]
PAIRS = [("involutive_gl2", "P"), ("involutive_gl2", "R"), ("hecke_gl2", "P"), ("hecke_gl2", "R")]


def el(text):
    return parse_nc(text, NAMES)


# -- determinants -------------------------------------------------------------

def test_rtt_involutive_det():
    c = ctx("involutive_gl2", "P")
    rep = quantum_det(c, ["a*d - q^-1*b*c", "d*a - q*c*b", "a*d - q*b*c"])
    assert [ok for _, ok in rep.reduced_forms] == [True, True, False]
    assert not rep.central and rep.central_witness is not None
    assert not rep.m_scalar
    half = ONE / 2
    assert rep.m_matrix == TensorOperator.diagonal([-half * Q, -half / Q])


def test_rtt_hecke_det():
    c = ctx("hecke_gl2", "P")
    rep = quantum_det(c, ["a*d - q*b*c"])
    assert rep.reduced_forms[0][1] and rep.central and rep.m_scalar
    assert rep.m_matrix == TensorOperator.diagonal([-ONE / q_number(2)] * 2)
    assert rep.e_m_factor_ok


def test_re_hecke_det():
    c = ctx("hecke_gl2", "R")
    rep = quantum_det(c, ["a*d - q^2*c*b"])
    assert rep.reduced_forms[0][1] and rep.central
    assert rep.factor_vFu == Q ** -4
    assert rep.e_m_factor_ok


@pytest.mark.parametrize("rn", ["involutive_gl2", "hecke_gl2"])
def test_group_like(rn):
    c = ctx(rn, "P")
    assert group_like_check(c.pres, canonical_det(c))


def test_group_like_fails_for_non_det():
    c = ctx("hecke_gl2", "P")
    assert not group_like_check(c.pres, el("a*d"))


@given(nonzero_rationals())
def test_det_gauge_invariant(a):
    """Rescaling u -> a u, v -> v/a leaves the determinant and M unchanged."""
    c = ctx("hecke_gl2", "P")
    cert = c.cert.rescaled(a)
    assert canonical_det(c, cert) == canonical_det(c)
    assert m_matrix(cert) == m_matrix(c.cert)


@given(st.sampled_from(["involutive_gl2", "hecke_gl2"]), nonzero_rationals(), nonzero_rationals())
def test_diagonal_gauge_keeps_det_verdicts(rn, x, y):
    """R -> (D x D) R (D x D)^-1 with D diagonal: same centrality and M verdicts."""
    D = TensorOperator.diagonal([x, y])
    DD = kron(D, D)
    R = DD @ matrix(rn) @ DD.inverse()
    rep = quantum_det(context(R, matrix("flip")))
    assert rep.central == (rn == "hecke_gl2") == rep.m_scalar


@pytest.mark.parametrize("rn", ["involutive_gl2", "hecke_gl2"])
def test_m_criterion_matches_centrality(rn):
    c = ctx(rn, "P")
    rep = quantum_det(c)
    assert rep.m_scalar == rep.central


# -- symmetric functions ------------------------------------------------------

def test_e1_re_hecke():
    c = ctx("hecke_gl2", "R")
    e1 = elementary_symmetric(c, 1)
    assert e1 == el("q^-3*a + q^-1*d")
    assert is_central(e1, c.pres)
    # swapped weights are not central
    assert not is_central(el("q^-1*a + q^-3*d"), c.pres)


@pytest.mark.parametrize("rn", ["involutive_gl2", "hecke_gl2"])
def test_re_symmetric_central(rn):
    c = ctx(rn, "R")
    for k in range(c.m + 1):
        assert is_central(elementary_symmetric(c, k), c.pres)
    assert symmetric_commute(c)


@pytest.mark.parametrize("rn, fn", PAIRS)
def test_symmetric_commute(rn, fn):
    assert symmetric_commute(ctx(rn, fn))


def test_elementary_out_of_range():
    with pytest.raises(ValueError):
        elementary_symmetric(ctx("hecke_gl2", "P"), 3)
    with pytest.raises(ValueError):
        power_sum(ctx("hecke_gl2", "P"), 0)


def test_power_sum_one_is_trace():
    c = ctx("hecke_gl2", "P")
    assert power_sum(c, 1) == el("a + d") == elementary_symmetric(c, 1)


@pytest.mark.parametrize("rn, fn, x, y", [
    ("hecke_gl2", "P", Q, -q_number(2)), ("hecke_gl2", "R", Q, -q_number(2)),
    ("involutive_gl2", "P", ONE, -2 * ONE), ("involutive_gl2", "R", ONE, -2 * ONE),
])
def test_newton(rn, fn, x, y):
    sol = newton_coefficients(ctx(rn, fn))
    assert sol == {"x": x, "y": y}


# -- characteristic polynomial and Cayley-Hamilton ----------------------------

def test_alpha_values():
    assert [alpha(k, 2, Q) for k in range(3)] == [ONE, 2 * Q ** 2 / q_number(2), Q ** 4]
    assert alpha(1, 2, ONE) == 1


@pytest.mark.parametrize("rn", ["involutive_gl2", "hecke_gl2"])
def test_char_poly(rn):
    rep = char_poly_expand(ctx(rn, "R"))
    assert rep.ok


def test_char_poly_needs_re():
    with pytest.raises(PresentationError):
        char_poly_expand(ctx("hecke_gl2", "P"))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_trace_reduction(k):
    assert check_trace_reduction(ctx("hecke_gl2", "R"), k)


@pytest.mark.parametrize("rn", ["involutive_gl2", "hecke_gl2"])
def test_ch_re(rn):
    assert cayley_hamilton(ctx(rn, "R"), "RE").ok


@pytest.mark.parametrize("rn, fn", PAIRS)
def test_ch_general(rn, fn):
    assert cayley_hamilton(ctx(rn, fn), "general").ok


def test_ch_re_needs_re():
    with pytest.raises(PresentationError):
        cayley_hamilton(ctx("hecke_gl2", "P"), "RE")


def test_inverse_expression():
    inv = inverse_expression(ctx("hecke_gl2", "R"))
    assert inv.verified
    assert inv.coeffs == [el("q^-4*a + q^-2*d"), NCPolynomial.scalar(-Q ** -2)]


def test_inverse_refuses_rtt():
    with pytest.raises(PresentationError):
        inverse_expression(ctx("hecke_gl2", "P"))
