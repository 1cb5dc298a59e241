from __future__ import annotations

import pytest

from crossingcrit import (
    CrossingPoint,
    Drawing,
    EdgeColor,
    FamilyParams,
    InvalidDrawing,
    build_g13_family,
    canonical_drawing,
    canonical_family_drawing,
    export_drawing,
    import_drawing,
    is_certificate,
    is_good_drawing,
    realize,
    weighted_crossing_count,
    witness_drawing_template,
)
from crossingcrit.drawing import Violation

from conftest import complete, complete_bipartite


def _k5_one_crossing():
    g = complete(5)
    # vertices 0..4; edges 0-2 and 1-3 cross in the standard pentagon drawing
    a = g.edge_between(0, 2).id
    b = g.edge_between(1, 3).id
    return g, Drawing.from_pairs(g, [(a, b)])


def test_k5_one_crossing_is_certificate():
    g, d = _k5_one_crossing()
    assert d.count == 1
    assert realize(d).is_planar
    assert is_certificate(d)


def test_empty_drawing_of_nonplanar_not_realizable():
    d = Drawing.empty(complete(5))
    assert d.count == 0
    assert not realize(d).is_planar


def test_weighted_count_multiplies():
    g = complete(5).scaled(3)
    a, b = g.edge_between(0, 2).id, g.edge_between(1, 3).id
    d = Drawing.from_pairs(g, [(a, b)])
    assert weighted_crossing_count(d) == 9


def test_goodness_violations():
    g = complete(4)
    e01, e02, e13 = g.edge_between(0, 1).id, g.edge_between(0, 2).id, g.edge_between(1, 3).id
    bad = Drawing.from_pairs(g, [(e01, e02)])
    rep = is_good_drawing(bad)
    assert not rep.good and rep.violations[0][0] == Violation.ADJACENT_CROSS
    twice = Drawing(g, (CrossingPoint(0, e02, e13), CrossingPoint(1, e02, e13)),
                    {e02: (0, 1), e13: (1, 0)})
    assert Violation.DOUBLE_CROSS in {v for v, _, _ in is_good_drawing(twice).violations}
    assert not is_certificate(twice)


def test_structure_errors():
    g = complete(4)
    with pytest.raises(InvalidDrawing):
        Drawing(g, (CrossingPoint(0, 0, 99),), {0: (0,), 99: (0,)})
    with pytest.raises(InvalidDrawing):
        Drawing(g, (CrossingPoint(0, 0, 5),), {0: (0,)})  # missing on edge 5
    with pytest.raises(InvalidDrawing):
        CrossingPoint(0, 3, 3)


def test_from_edge_sequences():
    g, d = _k5_one_crossing()
    a, b = d.crossings[0].a, d.crossings[0].b
    d2 = Drawing.from_edge_sequences(g, {a: [b], b: [a]})
    assert d2.count == 1 and is_certificate(d2)
    with pytest.raises(InvalidDrawing):
        Drawing.from_edge_sequences(g, {a: [b]})


def test_canonical_drawing_base_graph(g13):
    d = canonical_drawing(g13)
    assert d.count == 13
    assert is_certificate(d)
    blue = {e.id for e in g13.edges if e.color == EdgeColor.BLUE}
    assert all(c.a in blue and c.b in blue for c in d.crossings)


@pytest.mark.parametrize("doubled", [(2, 2), (1, 1, 2), (2, 1, 1, 2), (2, 2, 2, 2), (1, 3, 2)])
def test_canonical_family_drawing(doubled):
    d = canonical_family_drawing(FamilyParams(doubled))
    assert d.count == 13 and is_certificate(d)


def test_blue_templates_drop_below_13():
    p = FamilyParams((2, 2))
    g = build_g13_family(p)
    for e in g.edges:
        t = witness_drawing_template(p, e.id)
        if e.color == EdgeColor.BLUE:
            assert t is not None and t.count < 13 and is_certificate(t)
        else:
            assert t is None


def test_json_round_trip():
    _, d = _k5_one_crossing()
    back = import_drawing(export_drawing(d, "json"))
    assert back.pairs == d.pairs and back.graph == d.graph


def test_dot_round_trip(g13):
    d = canonical_drawing(g13)
    dot = export_drawing(d, "dot")
    assert dot.startswith(b"graph drawing {")
    back = import_drawing(dot, "dot")
    assert back.count == 13 and is_certificate(back)
    assert sorted(map(sorted, back.pairs)) == sorted(map(sorted, d.pairs))


def test_import_garbage():
    with pytest.raises(InvalidDrawing):
        import_drawing(b"{not json")
    with pytest.raises(InvalidDrawing):
        import_drawing(b'{"crossings": []}')
    with pytest.raises(ValueError):
        export_drawing(Drawing.empty(complete(3)), "svg")


def test_restricted_drops_crossings():
    _, d = _k5_one_crossing()
    e = d.crossings[0].a
    sub = d.without_edge(e)
    assert sub.count == 0 and realize(sub).is_planar


def test_k33_needs_a_crossing():
    assert not realize(Drawing.empty(complete_bipartite(3, 3))).is_planar
