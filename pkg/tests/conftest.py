import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# derandomized so every run explores the same examples
settings.register_profile(
    "qmkit",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qmkit")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def rel(a, b):
    return abs(a - b) / abs(b)
