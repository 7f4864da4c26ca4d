import numpy as np
import pytest

from lpgraph.graph import Graph

ACCEPTANCE_RESULTS = []


def random_graph(rng, n_max=30):
    """Random weighted graph, sometimes directed, sometimes with isolated nodes."""
    while True:
        n = int(rng.integers(3, n_max + 1))
        directed = bool(rng.random() < 0.5)
        density = rng.uniform(0.2, 0.9)
        a = (rng.random((n, n)) < density) * rng.exponential(1.0, (n, n))
        if rng.random() < 0.3:
            a[rng.integers(n)] = 0.0
            a[:, rng.integers(n)] = 0.0
        if not directed:
            a = np.triu(a) + np.triu(a, 1).T
        if a.sum() > 0 and np.count_nonzero(a.sum(1)) >= 2 and np.count_nonzero(a.sum(0)) >= 2:
            return Graph(a, directed)


def graph_corpus(seed=2024, count=100, n_max=30):
    rng = np.random.default_rng(seed)
    return [random_graph(rng, n_max) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus():
    return graph_corpus()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
