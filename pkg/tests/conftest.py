import os

import pytest
from hypothesis import settings

from smalehom.corpus import CorpusConfig, DEFAULT_SEED

settings.register_profile("default", derandomize=True, deadline=None, max_examples=100)
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=None, help="corpus seed (SMALE_SEED overrides)")


@pytest.fixture(scope="session")
def corpus_seed(request):
    env = os.environ.get("SMALE_SEED")
    if env is not None:
        return int(env)
    seed = request.config.getoption("--seed")
    return DEFAULT_SEED if seed is None else seed


@pytest.fixture(scope="session")
def corpus_config(corpus_seed):
    return CorpusConfig(seed=corpus_seed)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
