import pytest

from strongsdl.generators import corpus
from strongsdl.sdl import build_strong_sdl

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def built_corpus():
    out = []
    for spec in corpus():
        fam, isos = spec.build()
        out.append((spec, fam, isos, build_strong_sdl(fam, isos)))
    return out


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
