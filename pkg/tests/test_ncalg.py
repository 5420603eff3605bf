from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import matrix
from qmatkit.ncalg import (AlgebraPresentation, NCPolynomial, PresentationError, ResourceError, equal_mod,
                           f_copies, generating_matrix, ideal_slice, is_central, lift, parse_nc, present,
                           reduce, reduces_to_zero, relation_span_equal, tensor_square)
from qmatkit.scalars import Q
from qmatkit.tensorspace import TensorOperator, kron, place

NAMES = ["a", "b", "c", "d"]


def els(*texts):
    return [parse_nc(t, NAMES) for t in texts]


# -- free algebra -------------------------------------------------------------

def test_nc_arithmetic():
    a, b = els("a", "b")
    assert a * b != b * a
    assert (a + b) * (a - b) == a * a - a * b + b * a - b * b
    assert (Q * a).coefficient((0,)) == Q
    assert (a * b).degree() == 2 and not (a - a)


def test_parse_nc_round_trip():
    x = parse_nc("q*a*b - (q - q^-1)*b*c + 3", NAMES)
    assert parse_nc(x.to_str(NAMES), NAMES) == x
    assert NCPolynomial.from_json(x.to_json(NAMES), NAMES) == x


def test_f_copies_rtt(P):
    L = generating_matrix(2)
    L1, L2 = f_copies(L, P, 2)
    I = lift(TensorOperator.identity(2))
    assert L1 == kron(L, I) and L2 == kron(I, L)
    assert f_copies(L, P, 1) == [L]


def test_f_copies_re(Rh):
    L = generating_matrix(2)
    _, L2 = f_copies(L, Rh, 2)
    assert L2 == lift(Rh) @ place(L, 1, 2) @ lift(Rh.inverse())


def test_singular_F():
    with pytest.raises(Exception):
        f_copies(generating_matrix(2), TensorOperator.zero(2, 2), 2)


# -- presentations ------------------------------------------------------------

RTT_HECKE = ["a*b-q*b*a", "a*c-q*c*a", "a*d-d*a-(q-q^-1)*b*c", "b*c-c*b", "b*d-q*d*b", "c*d-q*d*c"]


def test_rtt_hecke_relations(Rh, P):
    pres = present(Rh, P)
    assert relation_span_equal(pres.relations, els(*RTT_HECKE))


def test_re_hecke_relations(Rh):
    pres = present(Rh, Rh)
    x = parse_nc("q*(b*c-c*b) - (q-q^-1)*a*(d-a)", NAMES)
    assert reduces_to_zero(x, pres)
    assert len(pres.relations) == 6


def test_re_involutive_commutative(Ri):
    pres = present(Ri, Ri)
    for g, h in product(range(4), repeat=2):
        x = NCPolynomial.gen(g) * NCPolynomial.gen(h) - NCPolynomial.gen(h) * NCPolynomial.gen(g)
        assert reduces_to_zero(x, pres)


def test_incompatible_pair(Ri, Rh):
    with pytest.raises(PresentationError):
        present(Ri, Rh)


def test_slices(Rh, P):
    pres = present(Rh, P)
    assert ideal_slice(pres, 2).rank == 6
    # commutative Hilbert series: 64 - C(6,3) = 44
    assert ideal_slice(pres, 3).rank == 44
    empty = AlgebraPresentation(NAMES, [])
    assert ideal_slice(empty, 2).rank == 0


def test_degree_cap(Rh, P):
    pres = present(Rh, P, degree_cap=3)
    with pytest.raises(ResourceError):
        reduce(NCPolynomial.word((0, 0, 0, 0)), pres)


def test_reduce_examples(Rh, P):
    pres = present(Rh, P)
    ok, bad = els("a*b - q*b*a", "a*b - b*a")
    assert reduces_to_zero(ok, pres)
    r = reduce(bad, pres)
    assert not r.zero
    # residual is a multiple of (1 - q) b a, up to the chosen normal form
    assert len(r.residual) == 1 and r.residual.terms.popitem()[1] in (Q - 1, 1 - Q, (Q - 1) / Q, (1 - Q) / Q)
    assert reduces_to_zero(NCPolynomial(), pres)


def test_equal_mod_involutive_rtt(Ri, P):
    pres = present(Ri, P)
    d1, d2, d3 = els("a*d - q^-1*b*c", "d*a - q*c*b", "a*d - q*b*c")
    assert equal_mod(d1, d2, pres)
    assert not equal_mod(d1, d3, pres)


def test_centrality(Rh, Ri, P):
    det_h = parse_nc("a*d - q*b*c", NAMES)
    assert is_central(det_h, present(Rh, P))
    v = is_central(parse_nc("a*d - q^-1*b*c", NAMES), present(Ri, P))
    assert not v and v.witness in NAMES
    assert is_central(NCPolynomial.scalar(1), present(Ri, P))


def test_tensor_square(Rh, P):
    pres = present(Rh, P)
    sq = tensor_square(pres)
    assert sq.ngens == 8
    a1, b2 = NCPolynomial.gen(0), NCPolynomial.gen(5)
    assert reduces_to_zero(a1 * b2 - b2 * a1, sq)
    for r in pres.relations:
        assert reduces_to_zero(r, sq)
    with pytest.raises(PresentationError):
        tensor_square(present(Rh, Rh))


# -- invariants ---------------------------------------------------------------

PAIRS = [("involutive_gl2", "P"), ("involutive_gl2", "R"), ("hecke_gl2", "P"), ("hecke_gl2", "R")]


def pair(rn, fn):
    R = matrix(rn)
    return R, (matrix("flip") if fn == "P" else R)


@pytest.mark.parametrize("rn, fn", PAIRS)
def test_union_of_half_systems(rn, fn):
    R, F = pair(rn, fn)
    q = present(R, F)
    h1, h2 = present(R, F, "HQA"), present(R, F, "HQA2")
    assert relation_span_equal(q.relations, h1.relations + h2.relations)


@pytest.mark.parametrize("rn, fn", PAIRS)
def test_relations_pushed_forward(rn, fn):
    R, F = pair(rn, fn)
    pres = present(R, F)
    L1, L2, L3 = f_copies(generating_matrix(2), F, 3)
    R23 = lift(place(R, 2, 3))
    X = R23 @ L2 @ L3 - L2 @ L3 @ R23
    for _, _, x in X.items():
        assert reduces_to_zero(x, pres)


@given(st.sampled_from(PAIRS), st.integers(0, 5), st.integers(0, 3), st.booleans())
def test_slice_monotonicity(pr, i, g, left):
    R, F = pair(*pr)
    pres = present(R, F)
    basis = ideal_slice(pres, 2).basis()
    x = basis[i % len(basis)]
    gen = NCPolynomial.gen(g)
    y = gen * x if left else x * gen
    assert reduces_to_zero(y, pres)


def test_hqa_displayed_relations():
    """H(R,P) matches S L L A = 0; the displayed H(R,R) sets match A L L S = 0."""
    Ri, Rh, P = matrix("involutive_gl2"), matrix("hecke_gl2"), matrix("flip")
    assert relation_span_equal(present(Ri, P, "HQA").relations,
                               els("a*b-q^-1*b*a", "c*d-q^-1*d*c", "a*d-d*a-q^-1*b*c+q*c*b"))
    assert relation_span_equal(present(Rh, P, "HQA").relations,
                               els("a*b-q*b*a", "c*d-q*d*c", "a*d-d*a-q*b*c+q^-1*c*b"))
    assert relation_span_equal(present(Ri, Ri, "HQA2").relations,
                               els("a*c-c*a", "b*d-d*b", "a*d-c*b-d*a+b*c"))
    assert relation_span_equal(present(Rh, Rh, "HQA2").relations,
                               els("a*c-q^2*c*a", "d*b-b*d-(q-q^-1)/q*a*b",
                                   "b*c-c*b-d*a+a*d/q^2+(q-q^-1)/q*a*a"))


@pytest.mark.parametrize("text", ["a*(b", "a*", "a^", "a + + ", "x*y", "a/b"])
def test_parse_nc_errors(text):
    with pytest.raises(ValueError):
        parse_nc(text, NAMES)
