import random

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rankgames.arena import Arena

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def arenas(draw, max_n=6, max_out=3):
    n = draw(st.integers(1, max_n))
    owner = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    succ = []
    for _ in range(n):
        k = draw(st.integers(1, min(n, max_out)))
        succ.append(sorted(draw(st.sets(st.integers(0, n - 1), min_size=k, max_size=k))))
    return Arena(owner, succ, 0)


@st.composite
def masks(draw, n):
    return np.array(draw(st.lists(st.booleans(), min_size=n, max_size=n)), dtype=bool)


@pytest.fixture
def rng():
    return random.Random(12345)
