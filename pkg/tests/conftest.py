import numpy as np
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
positive_a = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False, allow_infinity=False)


def matrices(n):
    return arrays(np.float64, (n, n), elements=finite)


def skew(n):
    return matrices(n).map(lambda A: A - A.T)
