"""Combinatorial drawings: crossing lists with per-edge orders.

A drawing stores no coordinates.  It lists which bundles cross and, for
every bundle, the order in which its crossings occur when walking from its
``u`` end to its ``v`` end.  Replacing every crossing by a degree-4 dummy
vertex gives the planarization; the drawing is realizable exactly when the
planarization is planar.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import InvalidDrawing, NotFound
from .graphcore import EdgeBundle, EdgeColor, WeightedMultigraph


@dataclass(frozen=True)
class CrossingPoint:
    id: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise InvalidDrawing(f"crossing {self.id} pairs edge {self.a} with itself")

    @property
    def pair(self) -> frozenset[int]:
        return frozenset((self.a, self.b))

    def other(self, e: int) -> int:
        return self.b if e == self.a else self.a


class Violation(str, Enum):
    DOUBLE_CROSS = "DoubleCross"
    ADJACENT_CROSS = "AdjacentCross"


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    violations: tuple[tuple[Violation, int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.good


@dataclass
class Planarization:
    """The planarized graph together with its bookkeeping maps."""

    graph: WeightedMultigraph
    segment_of: dict[int, int]  # planarization edge id -> original edge id
    dummy_of: dict[int, int]  # dummy vertex id -> crossing id
    is_planar: bool

    def __bool__(self) -> bool:
        return self.is_planar


@dataclass
class Drawing:
    """A combinatorial drawing of ``graph``.

    ``orders[e]`` lists the crossing ids along bundle ``e`` from ``u`` to
    ``v``; bundles without crossings may be omitted.
    """

    graph: WeightedMultigraph
    crossings: tuple[CrossingPoint, ...] = ()
    orders: dict[int, tuple[int, ...]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.crossings = tuple(self.crossings)
        self.orders = {int(e): tuple(o) for e, o in self.orders.items() if o}
        self.check_structure()

    # -- construction ------------------------------------------------------

    @classmethod
    def empty(cls, graph: WeightedMultigraph) -> "Drawing":
        return cls(graph)

    @classmethod
    def from_pairs(cls, graph: WeightedMultigraph, pairs: Iterable[tuple[int, int]]) -> "Drawing":
        """Crossings listed as edge pairs; orders follow the listing order."""
        crossings = [CrossingPoint(i, a, b) for i, (a, b) in enumerate(pairs)]
        orders: dict[int, list[int]] = {}
        for c in crossings:
            orders.setdefault(c.a, []).append(c.id)
            orders.setdefault(c.b, []).append(c.id)
        return cls(graph, tuple(crossings), {e: tuple(o) for e, o in orders.items()})

    @classmethod
    def from_edge_sequences(
        cls, graph: WeightedMultigraph, sequences: Mapping[int, Sequence[int]]
    ) -> "Drawing":
        """Build from ``e -> [f1, f2, ...]``: the edges crossed by ``e`` in order.

        Each unordered pair may cross only once (the sequences of both
        partners must mention each other exactly once).
        """
        ids: dict[frozenset[int], int] = {}
        crossings: list[CrossingPoint] = []
        orders: dict[int, list[int]] = {}
        for e in sorted(sequences):
            for f in sequences[e]:
                key = frozenset((e, f))
                if key not in ids:
                    ids[key] = len(crossings)
                    crossings.append(CrossingPoint(len(crossings), min(e, f), max(e, f)))
                orders.setdefault(e, []).append(ids[key])
        for c in crossings:
            for e in (c.a, c.b):
                if orders.get(e, []).count(c.id) != 1:
                    raise InvalidDrawing(f"edges {c.a} and {c.b} must list each other exactly once")
        return cls(graph, tuple(crossings), {e: tuple(o) for e, o in orders.items()})

    # -- structure ---------------------------------------------------------

    def check_structure(self) -> None:
        ids = [c.id for c in self.crossings]
        if len(set(ids)) != len(ids):
            raise InvalidDrawing("duplicate crossing ids")
        by_id = {c.id: c for c in self.crossings}
        for c in self.crossings:
            for e in (c.a, c.b):
                if not self.graph.has_edge(e):
                    raise InvalidDrawing(f"crossing {c.id} references unknown edge {e}")
        seen: Counter = Counter()
        for e, order in self.orders.items():
            if not self.graph.has_edge(e):
                raise InvalidDrawing(f"order given for unknown edge {e}")
            for cid in order:
                c = by_id.get(cid)
                if c is None or e not in (c.a, c.b):
                    raise InvalidDrawing(f"edge {e} lists crossing {cid} that does not involve it")
                seen[(e, cid)] += 1
        for c in self.crossings:
            for e in (c.a, c.b):
                if seen[(e, c.id)] != 1:
                    raise InvalidDrawing(f"crossing {c.id} must appear exactly once along edge {e}")

    def crossing(self, cid: int) -> CrossingPoint:
        for c in self.crossings:
            if c.id == cid:
                return c
        raise NotFound(f"no crossing {cid}")

    def crossed_edges(self, e: int) -> list[int]:
        by_id = {c.id: c for c in self.crossings}
        return [by_id[cid].other(e) for cid in self.orders.get(e, ())]

    @property
    def pairs(self) -> list[frozenset[int]]:
        return [c.pair for c in self.crossings]

    @property
    def count(self) -> int:
        return weighted_crossing_count(self)

    def restricted(self, keep: WeightedMultigraph) -> "Drawing":
        """Sub-drawing on a subgraph (crossings on dropped edges removed)."""
        crossings = tuple(c for c in self.crossings if keep.has_edge(c.a) and keep.has_edge(c.b))
        alive = {c.id for c in crossings}
        orders = {
            e: tuple(cid for cid in o if cid in alive) for e, o in self.orders.items() if keep.has_edge(e)
        }
        return Drawing(keep, crossings, orders, dict(self.meta))

    def without_edge(self, e: int) -> "Drawing":
        from .graphcore import delete_edge

        return self.restricted(delete_edge(self.graph, e))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "crossings": [{"id": c.id, "a": c.a, "b": c.b} for c in self.crossings],
            "orders": {str(e): list(o) for e, o in sorted(self.orders.items())},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Drawing":
        try:
            g = WeightedMultigraph.from_dict(data["graph"])
            crossings = tuple(CrossingPoint(int(c["id"]), int(c["a"]), int(c["b"])) for c in data["crossings"])
            orders = {int(e): tuple(int(x) for x in o) for e, o in data.get("orders", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidDrawing):
                raise
            raise InvalidDrawing(f"malformed drawing data: {exc}") from exc
        return cls(g, crossings, orders)


def weighted_crossing_count(d: Drawing) -> int:
    """Sum of ``w(a) * w(b)`` over all crossings."""
    g = d.graph
    return sum(g.edge(c.a).weight * g.edge(c.b).weight for c in d.crossings)


def is_good_drawing(d: Drawing) -> GoodnessReport:
    """No pair of bundles crosses twice and adjacent bundles never cross."""
    g = d.graph
    out: list[tuple[Violation, int, int]] = []
    seen: set[frozenset[int]] = set()
    for c in d.crossings:
        a, b = sorted((c.a, c.b))
        if c.pair in seen:
            out.append((Violation.DOUBLE_CROSS, a, b))
        seen.add(c.pair)
        if g.edge(a).touches(g.edge(b)):
            out.append((Violation.ADJACENT_CROSS, a, b))
    return GoodnessReport(not out, tuple(out))


def planarize(d: Drawing) -> tuple[WeightedMultigraph, dict[int, int], dict[int, int]]:
    g = d.graph
    labels = g.labels
    nxt = g.next_vertex_id()
    dummy_vertex: dict[int, int] = {}
    dummy_of: dict[int, int] = {}
    for c in d.crossings:
        dummy_vertex[c.id] = nxt
        dummy_of[nxt] = c.id
        labels[nxt] = f"X{c.id}"
        nxt += 1
    edges: list[EdgeBundle] = []
    segment_of: dict[int, int] = {}
    for e in g.edges:
        chain = [e.u] + [dummy_vertex[cid] for cid in d.orders.get(e.id, ())] + [e.v]
        for p, q in zip(chain, chain[1:]):
            sid = len(edges)
            edges.append(EdgeBundle(sid, p, q, e.weight, e.color))
            segment_of[sid] = e.id
    try:
        pg = WeightedMultigraph(labels, edges)
    except ValueError as exc:  # a loop: a crossing listed twice in a row
        raise InvalidDrawing(str(exc)) from exc
    # merged parallel segments lose their own ids; keep only surviving ones
    segment_of = {sid: eid for sid, eid in segment_of.items() if pg.has_edge(sid)}
    return pg, segment_of, dummy_of


def realize(d: Drawing) -> Planarization:
    """Planarize ``d`` and test the result for planarity."""
    d.check_structure()
    pg, segment_of, dummy_of = planarize(d)
    planar, _ = nx.check_planarity(pg.to_networkx())
    return Planarization(pg, segment_of, dummy_of, bool(planar))


def is_certificate(d: Drawing) -> bool:
    """Realizable and good: the drawing proves ``cr(G) <= count``."""
    return bool(is_good_drawing(d)) and realize(d).is_planar


# -- canonical drawings ------------------------------------------------------------

# position of each blue end on the horizontal spine line; all blue edges are
# drawn as equal-radius half circles below it
_BLUE_POS = {"u4": 0, "u3": 1, "u2": 2, "u1": 3, "v1": 4, "v2": 5, "v3": 6, "v4": 7}


def blue_edges(g: WeightedMultigraph) -> list[EdgeBundle]:
    return [e for e in g.edges if e.color == EdgeColor.BLUE]


def canonical_drawing(g: WeightedMultigraph) -> Drawing:
    """All blue bundles pairwise crossing once below the spine, nothing else crossing.

    ``g`` must carry the family labels ``u1..u4``, ``v1..v4`` on the blue
    ends (any family member, or one with some bundles deleted).
    """
    arcs = {}
    for e in blue_edges(g):
        a, b = _BLUE_POS[g.label(e.u)], _BLUE_POS[g.label(e.v)]
        arcs[e.id] = (a, b)
    pos: dict[int, list[tuple[float, int]]] = {e: [] for e in arcs}
    crossings = []
    ids = sorted(arcs)
    for i, e in enumerate(ids):
        for f in ids[i + 1:]:
            (a, b), (c, dd) = sorted(arcs[e]), sorted(arcs[f])
            if not (a < c < b < dd or c < a < dd < b):
                continue
            cid = len(crossings)
            crossings.append(CrossingPoint(cid, e, f))
            x = (a + b + c + dd) / 4  # equal radii: crossing above the midpoint of the centres
            pos[e].append((x, cid))
            pos[f].append((x, cid))
    orders = {}
    for e, lst in pos.items():
        lst.sort()
        forward = _BLUE_POS[g.label(g.edge(e).u)] < _BLUE_POS[g.label(g.edge(e).v)]
        orders[e] = tuple(cid for _, cid in (lst if forward else reversed(lst)))
    return Drawing(g, tuple(crossings), orders, {"method": "template", "template": "canonical"})


def canonical_family_drawing(params) -> Drawing:
    from .families import build_g13_family

    return canonical_drawing(build_g13_family(params))


def witness_drawing_template(params, deleted: int) -> Drawing | None:
    """Template drawing of ``G - deleted`` with fewer than 13 crossings, if one is known.

    Deleting a blue bundle leaves the canonical drawing with
    ``13 - w(e) * (sum of the other blue weights)`` crossings.  Other bundle
    classes have no stored template and return None, so callers fall back
    to the search in :mod:`crossingcrit.solver`.
    """
    from .families import build_g13_family

    g = build_g13_family(params)
    e = g.edge(deleted)
    if e.color != EdgeColor.BLUE:
        return None
    d = canonical_drawing(g).without_edge(deleted)
    d.meta = {"method": "template", "template": "canonical-minus-blue"}
    return d


# -- export ---------------------------------------------------------------------


def export_drawing(d: Drawing, fmt: str = "json") -> bytes:
    """Serialize as ``json`` (crossing list and orders) or ``dot`` (planarization)."""
    if fmt == "json":
        return json.dumps(d.to_dict(), indent=1, sort_keys=True).encode()
    if fmt == "dot":
        pg, segment_of, dummy_of = planarize(d)
        by_id = {c.id: c for c in d.crossings}
        lines = ["graph drawing {"]
        for v, lab in pg.labels.items():
            if v in dummy_of:
                c = by_id[dummy_of[v]]
                lines.append(
                    f'  {v} [label="{lab}", shape=point, dummy=true, crossing={c.id}, a={c.a}, b={c.b}];'
                )
            else:
                lines.append(f'  {v} [label="{lab}"];')
        for s in pg.edges:
            e = d.graph.edge(segment_of[s.id])
            lines.append(
                f'  {s.u} -- {s.v} [edge={e.id}, eu={e.u}, ev={e.v}, weight={e.weight}, '
                f'label="{e.weight}", color="{e.color.value}"];'
            )
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unsupported drawing format {fmt!r}")


_DOT_NODE = re.compile(r"^\s*(\d+)\s*\[(.*)\];\s*$")
_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*\[(.*)\];\s*$")
_DOT_ATTR = re.compile(r'(\w+)=("([^"]*)"|[^,\s]+)')


def _attrs(text: str) -> dict[str, str]:
    return {m.group(1): m.group(3) if m.group(3) is not None else m.group(2) for m in _DOT_ATTR.finditer(text)}


def import_drawing(data: bytes | str, fmt: str = "json") -> Drawing:
    """Inverse of :func:`export_drawing`."""
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "json":
        try:
            return Drawing.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidDrawing(f"not JSON: {exc}") from exc
    if fmt != "dot":
        raise ValueError(f"unsupported drawing format {fmt!r}")
    labels: dict[int, str] = {}
    dummies: dict[int, CrossingPoint] = {}
    segs: dict[int, list[tuple[int, int]]] = {}
    info: dict[int, EdgeBundle] = {}
    for line in text.splitlines():
        if m := _DOT_EDGE.match(line):
            a = _attrs(m.group(3))
            eid = int(a["edge"])
            segs.setdefault(eid, []).append((int(m.group(1)), int(m.group(2))))
            info[eid] = EdgeBundle(eid, int(a["eu"]), int(a["ev"]), int(a["weight"]), EdgeColor(a["color"]))
        elif m := _DOT_NODE.match(line):
            v, a = int(m.group(1)), _attrs(m.group(2))
            if a.get("dummy") == "true":
                dummies[v] = CrossingPoint(int(a["crossing"]), int(a["a"]), int(a["b"]))
            else:
                labels[v] = a.get("label", str(v))
    g = WeightedMultigraph(labels, info.values())
    orders: dict[int, tuple[int, ...]] = {}
    for eid, lst in segs.items():
        adj: dict[int, list[int]] = {}
        for p, q in lst:
            adj.setdefault(p, []).append(q)
            adj.setdefault(q, []).append(p)
        e = info[eid]
        walk, prev, cur = [], None, e.u
        while cur != e.v:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                raise InvalidDrawing(f"segments of edge {eid} do not form a path")
            prev, cur = cur, nxt[0]
            if cur != e.v:
                walk.append(dummies[cur].id)
        orders[eid] = tuple(walk)
    return Drawing(g, tuple(sorted(dummies.values(), key=lambda c: c.id)), orders)
