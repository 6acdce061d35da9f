import functools

import pytest

from centercache.corpus import FIXTURES, load_fixture

ACCEPTANCE_LINES: list = []


@functools.lru_cache(maxsize=None)
def fixture_corpus(name):
    return load_fixture(name)


def discourse(name, did=None):
    c = fixture_corpus(name)
    return c.discourse(did) if did else c.discourses[0]


def all_fixture_discourses():
    return [d for f in FIXTURES for d in fixture_corpus(f).discourses]


@pytest.fixture
def dialogue_d():
    return discourse("dialogue_d")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
