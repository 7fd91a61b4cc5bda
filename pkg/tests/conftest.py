from __future__ import annotations

import pytest

from tracelearn import blocksworld
from tracelearn.learn import learn_model
from tracelearn.model import Corpus


@pytest.fixture(scope="session")
def bw_instances():
    return blocksworld.generate_instances()


@pytest.fixture(scope="session")
def bw_corpus(bw_instances):
    return Corpus("blocksworld", tuple(bw_instances))


@pytest.fixture(scope="session")
def bw_injected(bw_corpus):
    return blocksworld.inject_goal_preceding_prop(bw_corpus)


@pytest.fixture(scope="session")
def bw_model(bw_corpus):
    return learn_model(bw_corpus, blocksworld.PARAM_NAMES)


@pytest.fixture(scope="session")
def bw_injected_model(bw_injected):
    return learn_model(bw_injected, blocksworld.PARAM_NAMES)


@pytest.fixture(scope="session")
def example_instance(bw_corpus):
    index = blocksworld.enumerate_configs().index(blocksworld.EXAMPLE_CONFIG)
    return bw_corpus.instances[index]


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
