import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from fractions import Fraction

from hypothesis import HealthCheck, settings
import pytest

from necklace.scalar import rational, root_of_unity, var

settings.register_profile(
    "ci",
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("ci")


@pytest.fixture
def t():
    return var("t")


@pytest.fixture
def q():
    return var("q")


def scalar_pool():
    """Small exact scalars used as the sampling pool for property tests."""
    return [
        rational(0),
        rational(1),
        rational(-2),
        rational(Fraction(3, 4)),
        root_of_unity(4),
        root_of_unity(3),
        root_of_unity(8, 3) + rational(1),
        var("t"),
        var("t") ** -2,
        var("z") * rational(2) - root_of_unity(4),
        (var("t") + rational(1)) * (var("t") - rational(1)),
    ]
