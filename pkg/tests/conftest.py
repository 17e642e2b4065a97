import pytest

from ecpairing.presets import preset

ACCEPTANCE = []


def record(number, ok, text):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def f49():
    return preset("tiny-f49")


@pytest.fixture(scope="session")
def f25():
    return preset("tiny-f25")


@pytest.fixture(scope="session")
def ss103():
    return preset("ss-f103")


@pytest.fixture(scope="session")
def k4():
    return preset("k4-d4")


@pytest.fixture(scope="session")
def freeman():
    return preset("freeman-k10")
