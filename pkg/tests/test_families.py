from __future__ import annotations

import logging

import pytest

from crossingcrit import (
    EdgeColor,
    FamilyParams,
    InvalidAnchor,
    InvalidParams,
    build_g13,
    build_g13_family,
    build_g13_k,
    build_k33,
    build_kochol,
    degree_profile,
    is_isomorphic,
    is_planar,
    shrink_wedge,
    shrink_wedge_graph,
    theorem3_build,
    theorem3_construct,
    transform_degree3,
    transform_degree_split,
)
from crossingcrit.families import spine_vertices, theorem3_params

from conftest import cycle


def test_base_graph_shape(g13):
    assert g13.n_vertices == 17
    assert g13.n_edges == 29
    assert g13.total_weight == 77
    colors = {c: sum(1 for e in g13.edges if e.color == c) for c in EdgeColor}
    assert colors[EdgeColor.BLUE] == 4
    assert sorted(e.weight for e in g13.edges if e.color == EdgeColor.BLUE) == [1, 1, 2, 2]


def test_base_graph_is_family_member(g13):
    assert is_isomorphic(g13, build_g13_family([2, 2]), colors=True)


def test_base_graph_nonplanar(g13):
    assert not is_planar(g13)


def test_params_parsing():
    p = FamilyParams.parse("1, 0.5, 1/2, 1")
    assert p.doubled_ks == (2, 1, 1, 2)
    assert p.k == 3 and p.m == 4
    assert str(p) == "(1,1/2,1/2,1)"
    assert FamilyParams.from_ks([1, 1]) == FamilyParams((2, 2))


@pytest.mark.parametrize("bad", [(), (0, 2), (1, 2), (-2, 4)])
def test_params_invalid(bad):
    with pytest.raises(InvalidParams):
        FamilyParams(bad)


def test_params_not_half_integer():
    with pytest.raises(InvalidParams):
        FamilyParams.parse("0.3,1")


@pytest.mark.parametrize("doubled,ok", [((2, 2), True), ((1, 1, 2), False), ((2, 1, 1, 2), True),
                                        ((2, 2, 2), True), ((1, 2, 1), False)])
def test_criticality_preconditions(doubled, ok):
    assert FamilyParams(doubled).criticality_ok is ok


@pytest.mark.parametrize("doubled", [(2, 2), (1, 1, 2), (2, 1, 1, 2), (2, 2, 2, 2), (4, 2), (3, 1, 2),
                                     (1, 1, 1, 1, 1, 1), (2, 3, 1), (6, 2, 2)])
def test_vertex_count_formula(doubled):
    p = FamilyParams(doubled)
    assert build_g13_family(p).n_vertices == 3 * p.k + p.m + 9 == p.vertex_count


def test_spine_is_a_weight7_path():
    p = FamilyParams((2, 1, 1, 2))
    g = build_g13_family(p)
    zs = spine_vertices(g, p)
    assert len(zs) == 4
    for a, b in zip(zs, zs[1:]):
        e = g.edge_between(a, b)
        assert e is not None and e.weight == 7 and e.color == EdgeColor.RED


def test_g13_k_sizes():
    assert build_g13_k(2).n_vertices == 19
    assert build_g13_k(5).n_vertices == 34
    with pytest.raises(InvalidParams):
        build_g13_k(1)


def test_every_family_member_has_four_blue_bundles():
    for d in [(2, 2), (1, 1, 2), (2, 4, 2)]:
        g = build_g13_family(d)
        assert sorted(e.weight for e in g.edges if e.color == EdgeColor.BLUE) == [1, 1, 2, 2]


def test_shrink_wedge_reduces_k():
    p = FamilyParams((2, 4, 2))
    q = shrink_wedge(p, 2)
    assert q.doubled_ks == (2, 2, 2)
    assert q.k == p.k - 1
    assert build_g13_family(q).n_vertices == p.vertex_count - 3


def test_shrink_wedge_graph_matches_parameter_shrink():
    p = FamilyParams((4, 2))
    g = build_g13_family(p)
    h = shrink_wedge_graph(g, p, 1)
    assert h.n_vertices == g.n_vertices - 3


def test_shrink_wedge_low_parameter(caplog):
    with pytest.raises(InvalidParams):
        shrink_wedge(FamilyParams((2, 2)), 1)
    with caplog.at_level(logging.WARNING):
        shrink_wedge(FamilyParams((3, 1)), 1)
    assert caplog.records


def test_k33_and_kochol():
    k = build_k33()
    assert (k.n_vertices, k.n_edges) == (6, 9)
    assert not is_planar(k)
    assert (build_kochol(1).n_vertices, build_kochol(1).n_edges) == (5, 8)
    for t in (2, 3, 4):
        g = build_kochol(t)
        assert g.n_vertices == 10 * t - 5 and g.n_edges == 16 * t - 8
        assert set(degree_profile(g)) == {3, 4}
        assert not is_planar(g)


def test_degree3_transform():
    p = FamilyParams((2, 2))
    g = build_g13_family(p)
    s, t1, t2 = g.vertex("w1^2"), g.vertex("w2^2"), g.vertex("w4^2")
    t3 = next(x for x in g.neighbors(s) if x not in (t1, t2))
    h = transform_degree3(g, t1, s, t2, t3, 1)
    assert h.degree(h.vertex("w1^2'")) == 3
    assert h.n_vertices == g.n_vertices + 1
    with pytest.raises(InvalidAnchor):
        transform_degree3(g, t2, s, t1, t3, 1)


def test_degree_split_transform_and_guard():
    p = FamilyParams((2, 2, 2))
    g = build_g13_family(p)
    z1, z2, z3 = (g.vertex(f"z{i}") for i in (1, 2, 3))
    extra = g.degree(z2) - 14
    h = transform_degree_split(g, z1, z2, z3, 7, extra, 4)
    assert h.degree(z2) == 2 * 4 + extra
    assert h.edge_between(z1, z3).weight == 3
    with pytest.raises(InvalidAnchor):
        transform_degree_split(g, z1, z2, z3, 7, extra, 7)
    with pytest.raises(InvalidAnchor):
        transform_degree_split(cycle(4), 0, 1, 2, 7, 1, 3)


def test_theorem3_schedule_lengths():
    for q, d in [(1, 8), (2, 14), (1, 16)]:
        p = theorem3_params(q, d)
        assert p.m == 1 + 3 * q * (max(d, 14) - 5)
        assert p.criticality_ok


@pytest.mark.parametrize("q,d", [(1, 8), (2, 10), (1, 16)])
def test_theorem3_profile(q, d):
    prof = degree_profile(theorem3_construct(q, d, 13))
    assert all(prof.get(x, 0) >= q for x in range(3, d + 1))


def test_theorem3_zip_count():
    t13, t15 = theorem3_build(1, 8, 13), theorem3_build(1, 8, 15)
    assert t15.graph.n_vertices == t13.graph.n_vertices + 2 * 4
    assert [m["copy"] for m in t15.manifest if m.get("op") == "zip_k33"] == [1, 2]


def test_theorem3_invalid():
    with pytest.raises(InvalidParams):
        theorem3_construct(0, 8, 13)
    with pytest.raises(InvalidParams):
        theorem3_construct(1, 7, 13)
    with pytest.raises(InvalidParams):
        theorem3_construct(1, 8, 12)


@pytest.mark.parametrize("doubled,j", [((2, 4, 2), 2), ((4, 2), 1), ((2, 2, 4), 3), ((3, 3), 1),
                                       ((2, 1, 1, 4, 2), 4), ((6, 2), 1)])
def test_surgical_shrink_matches_rebuild(doubled, j):
    p = FamilyParams(doubled)
    h = shrink_wedge_graph(build_g13_family(p), p, j)
    assert is_isomorphic(h, build_g13_family(shrink_wedge(p, j)), colors=True)


def test_repeated_shrinks_reach_minimal_params():
    p = FamilyParams((2, 6, 2))
    for _ in range(p.k - 3):
        p = shrink_wedge(p, 2)
    assert p.doubled_ks == (2, 2, 2)
    with pytest.raises(InvalidParams):
        shrink_wedge(p, 2)


@pytest.mark.parametrize("doubled", [(2, 1, 3, 2), (2, 2, 2, 2), (2, 4, 1, 1, 2)])
def test_interior_spine_degree(doubled):
    g = build_g13_family(doubled)
    for i, d in enumerate(doubled[1:-1], start=2):
        assert g.degree(g.vertex(f"z{i}")) == 14 + d


@pytest.mark.parametrize("doubled", [(2, 2), (1, 1, 2), (2, 1, 3, 2)])
def test_family_colour_invariants(doubled):
    g = build_g13_family(doubled)
    m = len(doubled)
    green = {e.id for e in g.edges if e.color == EdgeColor.GREEN}
    assert green == {g.edge_by_labels("u5", "z1").id, g.edge_by_labels(f"z{m}", "v5").id}
    assert all(g.edge(e).weight == 1 for e in green)
    spine = [g.edge_by_labels(f"z{i}", f"z{i + 1}") for i in range(1, m)]
    assert all(e.weight == 7 for e in spine)


def test_wedge_weights_in_unexpanded_family():
    g = build_g13_k(3)
    for i in range(1, 4):
        w1, w4 = g.vertex(f"w1^{i}"), g.vertex(f"w4^{i}")
        heavy = [e.weight for e in g.incident(w1) + g.incident(w4) if e.color == EdgeColor.GRAY]
        assert sorted(heavy) == [1, 1, 1, 1, 2, 2]


def test_degree3_transform_weight_and_guard():
    g = build_g13_family((2, 2, 2))
    s, t1, t2 = g.vertex("w1^2"), g.vertex("w2^2"), g.vertex("w4^2")
    t3 = next(x for x in g.neighbors(s) if x not in (t1, t2))
    h = transform_degree3(g, t1, s, t2, t3, 1)
    assert h.total_weight == g.total_weight + 1
    assert h.degree(t1) == g.degree(t1)
    heavy = g.with_edge(t1, g.vertex("z1"), g.degree(t1))  # push deg(t1) beyond h + 5
    with pytest.raises(InvalidAnchor):
        transform_degree3(heavy, t1, s, t2, t3, 1)


@pytest.mark.parametrize("doubled,a,b,deg", [((2, 1, 2, 1), 1, 2, 5), ((2, 2, 2), 2, 3, 8)])
def test_degree_split_examples(doubled, a, b, deg):
    g = build_g13_family(FamilyParams(doubled))
    z1, z2, z3 = (g.vertex(f"z{i}") for i in (1, 2, 3))
    before = g.degree(z2)
    h = transform_degree_split(g, z1, z2, z3, 7, a, b)
    assert h.degree(z2) == deg
    assert before == 14 + a
    star = h.degree(z2) + h.edge_between(z1, z3).weight * 2
    assert star == 2 * 7 + a


@pytest.mark.parametrize("d", [17, 18, 20])
def test_theorem3_profile_large_d(d):
    prof = degree_profile(theorem3_construct(1, d, 13))
    assert all(prof.get(x, 0) >= 1 for x in range(3, d + 1))
