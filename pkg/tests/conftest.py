import hypothesis.strategies as st
from hypothesis import settings

from chisini_lab.symgroup import Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def permutations(draw, degree=None, max_degree=7):
    d = degree if degree is not None else draw(st.integers(1, max_degree))
    images = draw(st.permutations(list(range(1, d + 1))))
    return Permutation(tuple(images))


@st.composite
def transpositions(draw, d):
    a = draw(st.integers(1, d))
    b = draw(st.integers(1, d).filter(lambda v: v != a))
    return Permutation.transposition(d, a, b)
