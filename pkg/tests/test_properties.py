"""Randomised invariants of the exact solver and the drawing machinery."""

from __future__ import annotations

import itertools

from hypothesis import HealthCheck, event, given, settings
from hypothesis import strategies as st

from crossingcrit import (
    Drawing,
    EdgeBundle,
    SolverBudget,
    Status,
    WeightedMultigraph,
    delete_edge,
    exact_cr,
    is_certificate,
    is_isomorphic,
    subdivide_edge,
    subdivide_to_simple,
    weighted_crossing_count,
)
from crossingcrit.planarity import is_plane_rotation, planar_embedding

PROPERTY_SETTINGS = settings(
    max_examples=110,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)

BUDGET = SolverBudget(time_limit=60)
EXAMPLES: dict[str, int] = {}  # examples run per property, read by the acceptance suite


def _count(name: str) -> None:
    EXAMPLES[name] = EXAMPLES.get(name, 0) + 1


_K5 = set(itertools.combinations(range(5), 2))
_K33 = {(a, b) for a in (0, 2, 4) for b in (1, 3, 5)}


@st.composite
def small_graphs(draw, min_n: int = 5, max_n: int = 6) -> WeightedMultigraph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    # dense on purpose, and half the time forced to contain K5 or K3,3:
    # sparse graphs on six vertices are almost always planar
    cores = ["k5", "k33", "none"] if n >= 6 else ["k5", "none"] if n == 5 else ["none"]
    core = draw(st.sampled_from(cores))
    forced = {"none": set(), "k5": _K5, "k33": _K33}[core]
    mask = draw(st.lists(st.integers(0, 4).map(bool), min_size=len(pairs), max_size=len(pairs)))
    weights = draw(st.lists(st.sampled_from([1, 1, 1, 2]), min_size=len(pairs), max_size=len(pairs)))
    edges = [
        EdgeBundle(i, u, v, w)
        for i, ((u, v), keep, w) in enumerate(zip(pairs, mask, weights))
        if keep or (u, v) in forced
    ]
    return WeightedMultigraph(range(n), edges)


def solve(g: WeightedMultigraph) -> int:
    r = exact_cr(g, BUDGET)
    assert r.status == Status.EXACT, r.stats
    assert is_certificate(r.witness) and r.witness.count == r.value
    event(f"cr={min(r.value, 5)}{'+' if r.value >= 5 else ''}")
    return r.value


@PROPERTY_SETTINGS
@given(small_graphs(), st.sampled_from([2, 3]))
def test_weight_scaling_is_quadratic(g, t):
    _count("test_weight_scaling_is_quadratic")
    assert solve(g.scaled(t)) == t * t * solve(g)


@PROPERTY_SETTINGS
@given(small_graphs(), st.data())
def test_subdivision_invariance(g, data):
    _count("test_subdivision_invariance")
    if not g.n_edges:
        return
    eid = data.draw(st.sampled_from(g.edge_ids))
    times = data.draw(st.integers(1, 3))
    assert solve(subdivide_edge(g, eid, times)) == solve(g)


@PROPERTY_SETTINGS
@given(small_graphs())
def test_bundles_match_expanded_parallel_edges(g):
    _count("test_bundles_match_expanded_parallel_edges")
    assert solve(subdivide_to_simple(g)) == solve(g)


@PROPERTY_SETTINGS
@given(small_graphs(), st.data())
def test_monotone_under_edge_deletion(g, data):
    _count("test_monotone_under_edge_deletion")
    if not g.n_edges:
        return
    eid = data.draw(st.sampled_from(g.edge_ids))
    assert solve(delete_edge(g, eid)) <= solve(g)


@PROPERTY_SETTINGS
@given(small_graphs(), st.permutations(range(6)))
def test_isomorphism_invariance(g, perm):
    _count("test_isomorphism_invariance")
    mapping = {v: perm[i] + 10 for i, v in enumerate(g.vertices)}
    h = g.relabeled(mapping)
    assert is_isomorphic(g, h)
    assert solve(h) == solve(g)


@PROPERTY_SETTINGS
@given(small_graphs(), st.sampled_from([2, 3, 5]))
def test_drawing_count_scales(g, t):
    d = exact_cr(g, BUDGET).witness
    scaled = Drawing(g.scaled(t), d.crossings, d.orders)
    assert weighted_crossing_count(scaled) == t * t * d.count
    assert is_certificate(scaled)


@PROPERTY_SETTINGS
@given(small_graphs(min_n=3, max_n=7))
def test_planar_embeddings_satisfy_euler(g):
    emb = planar_embedding(g)
    if emb is None:
        return
    assert is_plane_rotation(emb.rot)
    assert is_plane_rotation(emb.reflected().rot)
