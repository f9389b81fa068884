import pytest

from omegaloop.complex import CORPUS, bundled


@pytest.fixture(scope="session")
def corpus():
    return {n: bundled(n) for n in CORPUS}


@pytest.fixture(scope="session")
def hollow():
    return bundled("k4hollow")


@pytest.fixture(scope="session")
def c4():
    return bundled("c4")


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
