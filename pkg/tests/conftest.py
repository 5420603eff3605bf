import functools

import hypothesis.strategies as st
import pytest
from hypothesis import settings

from qmatkit import catalog
from qmatkit.scalars import RationalFunction

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def matrix(name):
    return catalog.NAMED[name]()


@functools.lru_cache(maxsize=None)
def ctx(rname, fname):
    from qmatkit.qdet import context

    R = matrix(rname)
    F = {"P": catalog.flip(), "R": R}[fname]
    return context(R, F)


@pytest.fixture
def P():
    return matrix("flip")


@pytest.fixture
def Ri():
    return matrix("involutive_gl2")


@pytest.fixture
def Rh():
    return matrix("hecke_gl2")


small = st.integers(-6, 6)


@st.composite
def laurent(draw, max_terms=3):
    terms = draw(st.dictionaries(st.integers(-3, 3), small.filter(bool), max_size=max_terms))
    return RationalFunction.laurent(terms)


@st.composite
def rationals(draw):
    num = draw(laurent())
    den = draw(laurent().filter(bool))
    return num / den


@st.composite
def nonzero_rationals(draw):
    return draw(rationals().filter(bool))
