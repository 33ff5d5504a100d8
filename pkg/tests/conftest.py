import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

DATA = os.path.join(os.path.dirname(__file__), "data")

#: lines recorded by the acceptance tests, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_path():
    return lambda name: os.path.join(DATA, name)


@pytest.fixture
def fig1():
    from spgames import load_game
    return load_game(os.path.join(DATA, "fig1.json"))


@pytest.fixture
def sigfig(fig1):
    from spgames import load_strategy
    return load_strategy(os.path.join(DATA, "sigfig.json"), fig1)


@pytest.fixture
def signoloop(fig1):
    from spgames import load_strategy
    return load_strategy(os.path.join(DATA, "signoloop.json"), fig1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
