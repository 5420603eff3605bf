import json

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import rationals
from qmatkit.scalars import ONE, ZERO, Q, parse
from qmatkit.tensorspace import (PlacementError, TensorOperator, digits, flatten, from_json_obj, kron,
                                 partial_trace, place, rank, rank_kernel, scalar_of, to_json_obj)


def rand_op(draw, dim=2, sites=1, density=0.6):
    n = dim ** sites
    ents = [[draw(rationals()) if draw(st.floats(0, 1)) < density else ZERO for _ in range(n)] for _ in range(n)]
    return TensorOperator.from_dense(ents, dim, sites)


@st.composite
def ops(draw, dim=2, sites=1):
    return rand_op(draw, dim, sites)


def test_digits_flatten_big_endian():
    assert digits(5, 2, 3) == (1, 0, 1)
    assert flatten((1, 0, 1), 2) == 5


def test_flip_swaps_factors():
    P = TensorOperator.flip(2)
    E = TensorOperator(2, 1, {0: {1: ONE}})
    assert P @ kron(E, TensorOperator.identity(2)) @ P == kron(TensorOperator.identity(2), E)


def test_place_matches_kron():
    A = TensorOperator.from_dense([["1", "q"], ["0", "2"]])
    I = TensorOperator.identity(2)
    assert place(A, 2, 3) == kron(kron(I, A), I)
    assert place(A, 1, 1) == A
    with pytest.raises(PlacementError):
        place(TensorOperator.flip(2), 2, 2)


def test_partial_trace_of_flip_is_identity():
    assert partial_trace(TensorOperator.flip(2), [2]) == TensorOperator.identity(2)
    full = partial_trace(TensorOperator.identity(2, 2), [1, 2])
    assert scalar_of(full) == parse("4")


def test_weighted_trace():
    C = TensorOperator.diagonal([Q, Q * Q])
    X = TensorOperator.from_dense([["1", "5"], ["7", "1"]])
    assert scalar_of(partial_trace(X, [1], C)) == Q + Q * Q


def test_inverse_and_singular():
    A = TensorOperator.from_dense([["q", "1"], ["1", "0"]])
    assert A @ A.inverse() == TensorOperator.identity(2)
    with pytest.raises(Exception):
        TensorOperator.from_dense([["1", "q"], ["1", "q"]]).inverse()


def test_json_round_trip():
    A = TensorOperator.from_dense([["q", "1/(q+1)"], ["0", "-3"]])
    assert from_json_obj(json.loads(json.dumps(to_json_obj(A)))) == A


@given(ops(), ops())
def test_kron_mixed_product(a, b):
    I = TensorOperator.identity(2)
    assert kron(a, I) @ kron(I, b) == kron(a, b) == kron(I, b) @ kron(a, I)


@given(ops(sites=2))
def test_rank_nullity(a):
    rk = rank_kernel(a)
    assert rk.rank + len(rk.kernel_basis) == a.size
    for k in rk.kernel_basis:
        v = TensorOperator(a.dim, a.sites, {0: {i: x for i, x in enumerate(k) if x}})
        assert (v @ a).is_zero()
    assert rank(a.transpose()) == rk.rank


@given(ops(sites=2))
def test_trace_of_partial_trace(a):
    assert scalar_of(partial_trace(partial_trace(a, [2]), [1])) == a.trace()
