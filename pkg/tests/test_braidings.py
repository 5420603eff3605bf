from fractions import Fraction

import pytest

from qmatkit.braidings import (NotSkewInvertible, baxterize, braid_witness, c_matrix, check_braid,
                               check_compatible, check_trace_identities, classify, hecke_parameter,
                               solve_skew_inverse)
from qmatkit.scalars import ONE, Q, parse, q_number
from qmatkit.symmetrizers import build_tower
from qmatkit.tensorspace import TensorOperator

LAM = Q - Q.inverse()


def test_braid_relation(P, Ri, Rh):
    assert check_braid(P) and check_braid(Ri) and check_braid(Rh)


def test_non_braiding_has_witness():
    X = TensorOperator.from_dense([["1", "1", "0", "0"], ["0", "1", "0", "0"],
                                   ["0", "0", "1", "0"], ["0", "0", "1", "1"]])
    assert braid_witness(X) is not None
    assert classify(X, with_skew=False).kind == "not-a-braiding"


def test_classification(P, Ri, Rh):
    assert classify(P).kind == "involutive"
    assert classify(Ri).kind == "involutive"
    prof = classify(Rh)
    assert prof.kind == "hecke" and prof.hecke_parameter == Q


def test_hecke_parameter_sign_convention(Rh):
    # -R^{-1} has eigenvalue -1/q three times, so its parameter is -1/q, not q
    assert hecke_parameter(Rh) == Q
    assert hecke_parameter(-Rh.inverse()) == -Q.inverse()


def test_compatibility(P, Ri, Rh):
    assert check_compatible(Ri, P) and check_compatible(Rh, P)
    assert check_compatible(Ri, Ri) and check_compatible(Rh, Rh)
    assert check_compatible(Rh, Ri)
    assert not check_compatible(Ri, Rh)


def test_c_matrices(P, Ri, Rh):
    assert c_matrix(P) == TensorOperator.identity(2)
    assert c_matrix(Ri) == TensorOperator.identity(2)
    # computed; differs from a diagonal-swapped value quoted elsewhere
    assert c_matrix(Rh) == TensorOperator.diagonal([Q ** -3, Q ** -1])


def test_r_trace_of_identity(Rh):
    C = c_matrix(Rh)
    assert C.trace() == Q ** -1 + Q ** -3


def test_trace_identities(Ri, Rh):
    assert check_trace_identities(Rh, c_matrix(Rh))
    assert check_trace_identities(Ri, c_matrix(Ri))
    assert not check_trace_identities(Rh, TensorOperator.identity(2))


def test_not_skew_invertible():
    Z = TensorOperator.from_dense([["1", "0", "0", "0"], ["0", "0", "0", "0"],
                                   ["0", "0", "0", "0"], ["0", "0", "0", "1"]])
    with pytest.raises(NotSkewInvertible):
        solve_skew_inverse(Z)


@pytest.mark.parametrize("name, flavor", [("Ri", "rational"), ("Rh", "trigonometric"), ("P", "rational")])
def test_parametric_braid(name, flavor, request):
    cb = baxterize(request.getfixturevalue(name), flavor)
    assert cb.check_braid_symbolic()
    assert cb.screen(samples=20, seed=1)
    assert cb.check_braid_at(5, 3, 2, q0=Fraction(7, 5))


def test_flavor_mismatch(Ri, Rh):
    with pytest.raises(ValueError):
        baxterize(Ri, "trigonometric")
    with pytest.raises(ValueError):
        baxterize(Rh, "rational")


def test_current_braiding_formulas(Ri, Rh):
    u, v = parse("5"), parse("2")
    I = TensorOperator.identity(2, 2)
    assert baxterize(Ri, "rational")(u, v) == Ri - (u - v).inverse() * I
    assert baxterize(Rh, "trigonometric")(u, v) == Rh - (LAM * u / (u - v)) * I


def test_degenerations(Ri, Rh):
    A2h = build_tower(Rh, "skew", 2).level(2)
    assert baxterize(Rh, "trigonometric").degenerate(Q ** -2) == -q_number(2) * A2h
    A2i = build_tower(Ri, "skew", 2).level(2)
    assert baxterize(Ri, "rational").degenerate(ONE, -ONE) == parse("-2") * A2i
