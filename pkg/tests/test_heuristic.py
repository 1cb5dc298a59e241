from __future__ import annotations

import pytest

from crossingcrit import (
    FamilyParams,
    build_g13,
    build_g13_family,
    build_kochol,
    delete_edge,
    is_certificate,
    planarize_heuristic,
)
from crossingcrit.heuristic import EmbeddedPlanarization

from conftest import complete, complete_bipartite, cycle, petersen


@pytest.mark.parametrize(
    "make,expected",
    [(lambda: complete(5), 1), (lambda: complete_bipartite(3, 3), 1), (lambda: complete(6), 3),
     (petersen, 2), (lambda: build_kochol(4), 2)],
)
def test_known_values_reached(make, expected):
    d, stats = planarize_heuristic(make(), seed=0)
    assert is_certificate(d)
    assert d.count == expected
    assert stats.restarts >= 1


def test_planar_input_gives_zero():
    d, _ = planarize_heuristic(cycle(7).with_edge(0, 3))
    assert d.count == 0 and is_certificate(d)


def test_base_graph_reaches_13():
    d, _ = planarize_heuristic(build_g13(), restarts=8)
    assert is_certificate(d) and d.count == 13


def test_deterministic_given_seed():
    g = petersen()
    a, _ = planarize_heuristic(g, seed=3, restarts=3)
    b, _ = planarize_heuristic(g, seed=3, restarts=3)
    assert a.to_dict() == b.to_dict()


def test_disconnected_graph():
    g = complete(5)
    b = complete_bipartite(3, 3)
    # disjoint union by shifting ids
    from crossingcrit import WeightedMultigraph
    from dataclasses import replace
    shift = g.next_vertex_id()
    eshift = g.next_edge_id()
    labels = {**g.labels, **{v + shift: f"b{lab}" for v, lab in b.labels.items()}}
    edges = [*g.edges, *(replace(e, id=e.id + eshift, u=e.u + shift, v=e.v + shift) for e in b.edges)]
    u = WeightedMultigraph(labels, edges)
    d, _ = planarize_heuristic(u)
    assert is_certificate(d) and d.count == 2


def test_target_stops_early():
    g = build_g13()
    _, stats = planarize_heuristic(g, restarts=20, target=13)
    assert stats.restarts < 20


def test_insert_and_remove_edge_keep_certificate():
    import random

    from crossingcrit.heuristic import _embed

    g = complete(5)
    last = g.edges[-1]
    sub = [e for e in g.edges if e.id != last.id]
    pl = EmbeddedPlanarization(g)
    pl.load_plane_subgraph(sub, _embed(g, sub, random.Random(0)))
    assert pl.cost() == 0
    cost = pl.insert_edge(last.id)
    assert cost == pl.cost() >= 1
    d = pl.to_drawing()
    assert is_certificate(d) and d.count == cost
    pl.remove_edge(last.id)
    assert pl.cost() == 0


def test_deleted_bundle_drops_below_13():
    p = FamilyParams((2, 2))
    g = build_g13_family(p)
    e = g.edge_by_labels("z1", "z2")
    d, _ = planarize_heuristic(delete_edge(g, e.id), target=12)
    assert d.count <= 12 and is_certificate(d)
