import time
from pathlib import Path

import pytest

from semantometrics import kernels
from semantometrics.contribution import contribution_all
from semantometrics.corpus import load_corpus
from semantometrics.graph import build_graph
from semantometrics.textmodel import vectorize_corpus

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_corpus(FIXTURES / "papers.jsonl", FIXTURES / "edges.csv")


@pytest.fixture(scope="session")
def fixture_pipeline(fixture_corpus):
    graph = build_graph(fixture_corpus.edges)
    vectors = vectorize_corpus(fixture_corpus)
    table = contribution_all(graph, vectors, fixture_corpus)
    return fixture_corpus, graph, vectors, table


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.backend
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


# --- acceptance reporting ------------------------------------------------

SESSION_START = time.perf_counter()
ACCEPTANCE_LINES: list[str] = []


def pytest_collection_modifyitems(config, items):
    # the wall-clock budget check has to see the whole suite, so it runs last
    last = [it for it in items if it.name == "test_c7_suite_runtime"]
    items[:] = [it for it in items if it.name != "test_c7_suite_runtime"] + last


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Record and print one pass/fail line, then assert."""

    def check(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return check
