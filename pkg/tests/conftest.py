import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rotorrouter.graph import FIXTURES, serialize_digraph  # noqa: E402
from rotorrouter.verify import random_corpus  # noqa: E402

CORPUS_SEED = 20240601
CORPUS_SIZE = 200


def corpus():
    """Fixtures G1..G4 followed by the seeded random corpus."""
    return list(FIXTURES.items()) + list(random_corpus(CORPUS_SIZE, CORPUS_SEED))


@pytest.fixture(scope="session")
def graph_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("graphs")
    paths = {}
    for name, D in FIXTURES.items():
        p = d / f"{name}.txt"
        p.write_text(serialize_digraph(D))
        paths[name] = str(p)
    return paths


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
