import os

import pytest

from polsyz.graph_core import parse_monomial_set

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_path(name):
    return os.path.join(DATA, name + ".mon")


def load(name):
    with open(data_path(name)) as fh:
        return parse_monomial_set(fh.read())


@pytest.fixture
def villa():
    return load("villa")


@pytest.fixture
def decagon():
    return load("decagon_chords")


@pytest.fixture
def hexagon():
    return load("hexagon_chords")


@pytest.fixture
def bounding():
    return load("bounding_cycle")


@pytest.fixture
def octagon():
    return load("octagon_chord")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
