import pytest
from hypothesis import HealthCheck, settings

from lexpea.descriptors import parse_group
from lexpea.groups import Integers
from lexpea.pea import chain, gamma, materialize

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def lex_s3():
    """Gamma(Z x_lex S3, (3,0)), the 14-element noncommutative algebra."""
    return materialize(gamma(parse_group("lex(Z,finite:S3)"), (3, "0")))


@pytest.fixture(scope="session")
def lex_s3_small():
    return materialize(gamma(parse_group("lex(Z,finite:S3)"), (2, "0")))


@pytest.fixture(scope="session")
def diamond():
    return materialize(gamma(Integers(2), (1, 1)))


@pytest.fixture(scope="session")
def c4():
    return chain(3)
