import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from halfhopf import CircleFunction, random_trig

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def trig_polys(draw, max_n=16, dims=(1, 2, 3), real=True, decay=1.5, min_n=0):
    seed = draw(st.integers(0, 2**32 - 1))
    N = draw(st.integers(min_n, max_n))
    k = draw(st.sampled_from(dims))
    return random_trig(np.random.default_rng(seed), N, k, decay, real)


def vec(*components):
    """Real R^k map from scalar ``{n: c}`` dicts, one per component."""
    return CircleFunction.stack(CircleFunction.from_dict(c, real=True) for c in components)


COS = {1: 0.5, -1: 0.5}
SIN = {1: -0.5j, -1: 0.5j}
COS2 = {2: 0.5, -2: 0.5}
SIN2 = {2: -0.5j, -2: 0.5j}


@pytest.fixture
def circle():
    return vec(COS, SIN)


@pytest.fixture
def witness():
    return vec(COS, SIN2)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
