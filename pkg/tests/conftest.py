import pytest
from hypothesis import HealthCheck, settings

from icl.poly import LEX, QQ, Field, Ring

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")


@pytest.fixture
def R():
    return Ring(("x", "y"))


@pytest.fixture
def R3():
    return Ring(("x", "y", "z"))


@pytest.fixture
def Rlex():
    return Ring(("x", "y"), QQ, LEX)


@pytest.fixture
def F7():
    return Ring(("x", "y"), Field(7))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
