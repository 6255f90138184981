import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from convexval.rational import to_rat

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def rats(lo=-2, hi=2, denoms=(1, 2, 4)):
    return st.builds(
        lambda d, k: to_rat(Fraction(k, d)),
        st.sampled_from(denoms),
        st.integers(lo * 4, hi * 4),
    ).map(lambda q: max(min(q, to_rat(hi)), to_rat(lo)))


def vecs(n, lo=-2, hi=2):
    return st.tuples(*[rats(lo, hi) for _ in range(n)])


seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
