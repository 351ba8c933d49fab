import random

import pytest
from hypothesis import strategies as st

from fincube.harness import gen_cube, gen_embedding_span, gen_space


def space_strategy(max_points=5):
    return st.integers(0, 2**32 - 1).map(
        lambda s: gen_space(random.Random(s), max_points)
    )


def cube_strategy(max_degree=2, max_points=4):
    return st.tuples(
        st.integers(0, 2**32 - 1), st.integers(1, max_degree)
    ).map(lambda sn: gen_cube(random.Random(sn[0]), sn[1], max_points))


def span_strategy(closed=False, max_points=5):
    return st.integers(0, 2**32 - 1).map(
        lambda s: gen_embedding_span(random.Random(s), max_points, closed)
    )


@pytest.fixture
def rng():
    return random.Random(99)
