from __future__ import annotations

import itertools

import networkx as nx
import pytest

from crossingcrit import GraphBuilder, WeightedMultigraph, build_g13


def from_networkx(h: nx.Graph, weight: int = 1) -> WeightedMultigraph:
    b = GraphBuilder()
    ids = {v: b.add_vertex(str(v)) for v in h.nodes}
    for u, v, data in h.edges(data=True):
        b.add_edge(ids[u], ids[v], data.get("weight", weight))
    return b.build()


def complete(n: int, weight: int = 1) -> WeightedMultigraph:
    return from_networkx(nx.complete_graph(n), weight)


def complete_bipartite(a: int, b: int) -> WeightedMultigraph:
    return from_networkx(nx.complete_bipartite_graph(a, b))


def petersen() -> WeightedMultigraph:
    return from_networkx(nx.petersen_graph())


def cycle(n: int) -> WeightedMultigraph:
    return from_networkx(nx.cycle_graph(n))


@pytest.fixture(scope="session")
def g13() -> WeightedMultigraph:
    return build_g13()


@pytest.fixture
def k5() -> WeightedMultigraph:
    return complete(5)


def pairs(n: int):
    return itertools.combinations(range(n), 2)


# acceptance lines, echoed in the terminal summary so they land in the test log
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
