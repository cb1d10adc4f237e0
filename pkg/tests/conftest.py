import random

import pytest

from khovanov_kauffman import braid_closure
from khovanov_kauffman.datasets import corpus, graph, link, r3_pairs


@pytest.fixture(scope="session")
def diagrams():
    return corpus()


@pytest.fixture(scope="session")
def r3():
    return r3_pairs()


@pytest.fixture(scope="session")
def hopf():
    return link("hopf")


@pytest.fixture(scope="session")
def g1():
    return graph("g1")


@pytest.fixture(scope="session")
def g2():
    return graph("g2")


@pytest.fixture(scope="session")
def theta():
    return graph("theta")


def random_braid(rng: random.Random, max_crossings: int = 10):
    """Closure of a random braid word; often a multi-component link."""
    strands = rng.randint(1, 4)
    n = rng.randint(0, max_crossings) if strands > 1 else 0
    word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(n)]
    return braid_closure(word, strands)


# --- acceptance report -------------------------------------------------------

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    outcomes = _criteria.setdefault(number, (title, []))[1]
    if report.when == "call" or report.outcome != "passed":
        outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcomes = _criteria[number]
        ok = outcomes and all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
