"""Weighted multigraphs with colored edge bundles.

A bundle of weight ``p`` stands for ``p`` parallel edges drawn closely
together, so a crossing between bundles of weights ``p`` and ``q`` counts
``p * q`` crossings.  Parallel bundles between one vertex pair are merged on
construction, which keeps a single canonical representation.

Graphs are immutable; every operation returns a new graph.  Vertex and edge
identifiers are small integers that survive operations unchanged (deleted
ones simply disappear, new ones are allocated past the current maximum).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .errors import InvalidAnchor, NotFound


class EdgeColor(str, Enum):
    RED = "red"
    BLUE = "blue"
    GREEN = "green"
    GRAY = "gray"
    NONE = "none"


@dataclass(frozen=True)
class EdgeBundle:
    id: int
    u: int
    v: int
    weight: int = 1
    color: EdgeColor = EdgeColor.NONE

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"edge {self.id} is a self-loop at vertex {self.u}")
        if int(self.weight) != self.weight or self.weight < 1:
            raise ValueError(f"edge {self.id} has non-positive weight {self.weight}")

    @property
    def ends(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise NotFound(f"vertex {x} is not an end of edge {self.id}")

    def touches(self, other: "EdgeBundle") -> bool:
        """True if the two bundles share an end vertex."""
        return bool({self.u, self.v} & {other.u, other.v})


DegreeProfile = Counter  # weighted degree -> number of vertices


class WeightedMultigraph:
    """Undirected loopless multigraph stored as weighted, colored bundles.

    Parameters
    ----------
    vertices:
        Either a mapping ``id -> label`` or an iterable of ids (labels then
        default to ``str(id)``).
    edges:
        Bundles over the declared vertices.  Bundles joining the same pair
        are merged into the first one (weights summed, first color kept).
    """

    __slots__ = ("_labels", "_edges", "_adj", "_by_label")

    def __init__(
        self,
        vertices: Mapping[int, str] | Iterable[int] = (),
        edges: Iterable[EdgeBundle] = (),
    ) -> None:
        if isinstance(vertices, Mapping):
            labels = {int(v): str(lab) for v, lab in vertices.items()}
        else:
            labels = {int(v): str(v) for v in vertices}
        self._labels: dict[int, str] = dict(sorted(labels.items()))
        self._edges: dict[int, EdgeBundle] = {}
        self._adj: dict[int, dict[int, int]] = {v: {} for v in self._labels}
        for e in edges:
            if e.u not in self._labels or e.v not in self._labels:
                raise NotFound(f"edge {e.id} uses undeclared vertex ({e.u}, {e.v})")
            if e.id in self._edges:
                raise ValueError(f"duplicate edge id {e.id}")
            existing = self._adj[e.u].get(e.v)
            if existing is not None:
                old = self._edges[existing]
                self._edges[existing] = replace(old, weight=old.weight + e.weight)
                continue
            self._edges[e.id] = e
            self._adj[e.u][e.v] = e.id
            self._adj[e.v][e.u] = e.id
        self._edges = dict(sorted(self._edges.items()))
        self._by_label: dict[str, int] | None = None

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._labels)

    @property
    def edges(self) -> tuple[EdgeBundle, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, v: object) -> bool:
        return v in self._labels

    def __iter__(self) -> Iterator[int]:
        return iter(self._labels)

    def __repr__(self) -> str:
        return (
            f"WeightedMultigraph(|V|={len(self._labels)}, bundles={len(self._edges)}, "
            f"weight={self.total_weight})"
        )

    @property
    def n_vertices(self) -> int:
        return len(self._labels)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def total_weight(self) -> int:
        return sum(e.weight for e in self._edges.values())

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def edge(self, eid: int) -> EdgeBundle:
        try:
            return self._edges[eid]
        except KeyError:
            raise NotFound(f"unknown edge id {eid}") from None

    def label(self, v: int) -> str:
        try:
            return self._labels[v]
        except KeyError:
            raise NotFound(f"unknown vertex id {v}") from None

    def vertex(self, label: str) -> int:
        """Vertex id carrying ``label`` (labels are expected to be unique)."""
        if self._by_label is None:
            self._by_label = {lab: v for v, lab in self._labels.items()}
        try:
            return self._by_label[label]
        except KeyError:
            raise NotFound(f"no vertex labelled {label!r}") from None

    def edge_between(self, u: int, v: int) -> EdgeBundle | None:
        self._check_vertex(u)
        self._check_vertex(v)
        eid = self._adj[u].get(v)
        return None if eid is None else self._edges[eid]

    def edge_by_labels(self, a: str, b: str) -> EdgeBundle:
        e = self.edge_between(self.vertex(a), self.vertex(b))
        if e is None:
            raise NotFound(f"no edge between {a!r} and {b!r}")
        return e

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return sorted(self._adj[v])

    def incident(self, v: int) -> list[EdgeBundle]:
        self._check_vertex(v)
        return [self._edges[eid] for eid in sorted(self._adj[v].values())]

    def degree(self, v: int) -> int:
        """Weighted degree: parallel edges count with their multiplicity."""
        return sum(e.weight for e in self.incident(v))

    def edge_label(self, eid: int) -> str:
        e = self.edge(eid)
        return f"{self._labels[e.u]}{self._labels[e.v]}"

    def _check_vertex(self, v: int) -> None:
        if v not in self._labels:
            raise NotFound(f"unknown vertex id {v}")

    # -- construction helpers --------------------------------------------

    def next_vertex_id(self) -> int:
        return max(self._labels, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self._edges, default=-1) + 1

    def with_vertex(self, label: str | None = None) -> tuple["WeightedMultigraph", int]:
        v = self.next_vertex_id()
        labels = dict(self._labels)
        labels[v] = str(v) if label is None else label
        return WeightedMultigraph(labels, self._edges.values()), v

    def with_edge(
        self, u: int, v: int, weight: int = 1, color: EdgeColor = EdgeColor.NONE
    ) -> "WeightedMultigraph":
        """Add a bundle (merged into an existing parallel bundle if present)."""
        e = EdgeBundle(self.next_edge_id(), u, v, weight, EdgeColor(color))
        return WeightedMultigraph(self._labels, [*self._edges.values(), e])

    def with_weight(self, eid: int, weight: int) -> "WeightedMultigraph":
        e = self.edge(eid)
        if weight == 0:
            return delete_edge(self, eid)
        edges = [replace(e, weight=weight) if x.id == eid else x for x in self._edges.values()]
        return WeightedMultigraph(self._labels, edges)

    def without_vertices(self, drop: Iterable[int]) -> "WeightedMultigraph":
        drop = set(drop)
        labels = {v: lab for v, lab in self._labels.items() if v not in drop}
        edges = [e for e in self._edges.values() if e.u not in drop and e.v not in drop]
        return WeightedMultigraph(labels, edges)

    def edge_subgraph(self, eids: Iterable[int]) -> "WeightedMultigraph":
        """Subgraph keeping all vertices but only the listed bundles."""
        keep = set(eids)
        return WeightedMultigraph(self._labels, [e for e in self._edges.values() if e.id in keep])

    def induced_subgraph(self, vertices: Iterable[int]) -> "WeightedMultigraph":
        keep = set(vertices)
        return self.without_vertices(v for v in self._labels if v not in keep)

    def scaled(self, factor: int) -> "WeightedMultigraph":
        return WeightedMultigraph(
            self._labels, [replace(e, weight=e.weight * factor) for e in self._edges.values()]
        )

    def relabeled(self, mapping: Mapping[int, int]) -> "WeightedMultigraph":
        """Rename vertex ids through ``mapping`` (a bijection on the vertex set)."""
        labels = {mapping[v]: lab for v, lab in self._labels.items()}
        edges = [replace(e, u=mapping[e.u], v=mapping[e.v]) for e in self._edges.values()]
        return WeightedMultigraph(labels, edges)

    # -- conversions -----------------------------------------------------

    def to_networkx(self) -> nx.Graph:
        """Simple underlying graph; bundle data kept as edge attributes."""
        g = nx.Graph()
        for v, lab in self._labels.items():
            g.add_node(v, label=lab)
        for e in self._edges.values():
            g.add_edge(e.u, e.v, id=e.id, weight=e.weight, color=e.color.value)
        return g

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "label": lab} for v, lab in self._labels.items()],
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v, "weight": e.weight, "color": e.color.value}
                for e in self._edges.values()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeightedMultigraph":
        labels = {int(v["id"]): str(v.get("label", v["id"])) for v in data["vertices"]}
        edges = [
            EdgeBundle(
                int(e["id"]), int(e["u"]), int(e["v"]), int(e.get("weight", 1)),
                EdgeColor(e.get("color", "none")),
            )
            for e in data["edges"]
        ]
        return cls(labels, edges)

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str | bytes) -> "WeightedMultigraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v, lab in self._labels.items():
            lines.append(f'  {v} [label="{lab}"];')
        for e in self._edges.values():
            color = "black" if e.color is EdgeColor.NONE else e.color.value
            lines.append(f'  {e.u} -- {e.v} [id="{e.id}", label="{e.weight}", color="{color}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_edgelist(self) -> str:
        """One ``u v`` line per unit edge (bundles expanded)."""
        return "".join(f"{e.u} {e.v}\n" for e in self._edges.values() for _ in range(e.weight))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((tuple(self._labels.items()), tuple(self._edges.values())))


class GraphBuilder:
    """Mutable helper used by the family constructors."""

    def __init__(self) -> None:
        self._labels: dict[int, str] = {}
        self._edges: list[EdgeBundle] = []
        self._pair: dict[frozenset, int] = {}

    def add_vertex(self, label: str | None = None) -> int:
        v = len(self._labels)
        self._labels[v] = str(v) if label is None else label
        return v

    def add_edge(self, u: int, v: int, weight: int = 1, color: EdgeColor = EdgeColor.NONE) -> int:
        key = frozenset((u, v))
        if key in self._pair:
            i = self._pair[key]
            old = self._edges[i]
            self._edges[i] = replace(old, weight=old.weight + weight)
            return old.id
        e = EdgeBundle(len(self._edges), u, v, weight, EdgeColor(color))
        self._pair[key] = len(self._edges)
        self._edges.append(e)
        return e.id

    def build(self) -> WeightedMultigraph:
        return WeightedMultigraph(self._labels, self._edges)


# -- operations --------------------------------------------------------------


def delete_edge(g: WeightedMultigraph, e: int) -> WeightedMultigraph:
    """Remove the whole bundle ``e``; all vertices stay."""
    g.edge(e)
    return WeightedMultigraph(g.labels, [x for x in g.edges if x.id != e])


def contract_edge(g: WeightedMultigraph, e: int) -> WeightedMultigraph:
    """Merge the ends of bundle ``e`` into its first end ``u``.

    Bundles that become parallel are merged with summed weights (keeping the
    smaller edge id); loops produced by the contraction are dropped.
    """
    b = g.edge(e)
    keep, gone = b.u, b.v
    labels = {v: lab for v, lab in g.labels.items() if v != gone}
    edges = []
    for x in g.edges:
        if x.id == e:
            continue
        u = keep if x.u == gone else x.u
        v = keep if x.v == gone else x.v
        if u == v:
            continue
        edges.append(replace(x, u=u, v=v))
    return WeightedMultigraph(labels, edges)


def subdivide_edge(g: WeightedMultigraph, e: int, times: int = 1) -> WeightedMultigraph:
    """Replace bundle ``e`` by a path of ``times + 1`` bundles of the same weight and color."""
    b = g.edge(e)
    labels = g.labels
    edges = [x for x in g.edges if x.id != e]
    next_v, next_e = g.next_vertex_id(), g.next_edge_id()
    prev = b.u
    for k in range(times):
        labels[next_v] = f"{labels[b.u]}~{labels[b.v]}/{k + 1}"
        edges.append(EdgeBundle(b.id if k == 0 else next_e + k, prev, next_v, b.weight, b.color))
        prev = next_v
        next_v += 1
    edges.append(EdgeBundle(next_e + times, prev, b.v, b.weight, b.color))
    return WeightedMultigraph(labels, edges)


def subdivide_to_simple(g: WeightedMultigraph) -> WeightedMultigraph:
    """Expand every bundle into unit edges, subdividing all but one copy.

    A bundle ``uv`` of weight ``w`` becomes the edge ``uv`` plus ``w - 1``
    paths ``u - s - v`` through new degree-2 vertices.
    """
    labels = g.labels
    next_v = g.next_vertex_id()
    next_e = 0
    edges: list[EdgeBundle] = []
    for b in g.edges:
        edges.append(EdgeBundle(next_e, b.u, b.v, 1, b.color))
        next_e += 1
        for k in range(1, b.weight):
            s = next_v
            next_v += 1
            labels[s] = f"{labels[b.u]}~{labels[b.v]}#{k}"
            edges.append(EdgeBundle(next_e, b.u, s, 1, b.color))
            edges.append(EdgeBundle(next_e + 1, s, b.v, 1, b.color))
            next_e += 2
    return WeightedMultigraph(labels, edges)


def _unit_anchor(g: WeightedMultigraph, v: int) -> list[int]:
    inc = g.incident(v)
    if len(inc) != 3 or any(e.weight != 1 for e in inc):
        raise InvalidAnchor(
            f"zip anchor {g.label(v)} must have degree 3 via three unit bundles "
            f"(has weights {[e.weight for e in inc]})"
        )
    return [e.other(v) for e in inc]


def zip_product(
    g1: WeightedMultigraph,
    v1: int,
    g2: WeightedMultigraph,
    v2: int,
    pairing: Mapping[int, int] | Sequence[tuple[int, int]] | None = None,
    label_prefix: str = "",
) -> WeightedMultigraph:
    """Glue ``g1`` and ``g2`` at degree-3 vertices ``v1`` and ``v2``.

    Both anchors are deleted and the three neighbours of ``v1`` are joined to
    the three neighbours of ``v2`` by unit edges according to ``pairing``
    (neighbour in ``g1`` -> neighbour in ``g2``; default pairs them in sorted
    id order).  Ids of ``g1`` are kept; ids of ``g2`` are shifted past them.
    """
    stubs1 = _unit_anchor(g1, v1)
    stubs2 = _unit_anchor(g2, v2)
    if pairing is None:
        pairs = list(zip(sorted(stubs1), sorted(stubs2)))
    else:
        pairs = list(dict(pairing).items())
    if sorted(a for a, _ in pairs) != sorted(stubs1) or sorted(b for _, b in pairs) != sorted(stubs2):
        raise InvalidAnchor("pairing must be a bijection between the anchors' neighbours")

    voff = g1.next_vertex_id()
    eoff = g1.next_edge_id()
    h2 = g2.without_vertices([v2])
    labels = {v: lab for v, lab in g1.labels.items() if v != v1}
    for v, lab in h2.labels.items():
        labels[v + voff] = label_prefix + lab
    edges = [e for e in g1.edges if v1 not in e.ends]
    edges += [replace(e, id=e.id + eoff, u=e.u + voff, v=e.v + voff) for e in h2.edges]
    nxt = max((e.id for e in edges), default=-1) + 1
    for k, (a, b) in enumerate(pairs):
        edges.append(EdgeBundle(nxt + k, a, b + voff, 1, EdgeColor.NONE))
    return WeightedMultigraph(labels, edges)


def degree_profile(g: WeightedMultigraph) -> DegreeProfile:
    """Map weighted degree -> number of vertices having it."""
    return Counter(g.degree(v) for v in g.vertices)


def is_isomorphic(a: WeightedMultigraph, b: WeightedMultigraph, colors: bool = False) -> bool:
    """Weight-preserving (optionally color-preserving) isomorphism test."""
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return False
    if sorted(e.weight for e in a.edges) != sorted(e.weight for e in b.edges):
        return False

    def match(x: dict, y: dict) -> bool:
        return x["weight"] == y["weight"] and (not colors or x["color"] == y["color"])

    return nx.is_isomorphic(a.to_networkx(), b.to_networkx(), edge_match=match)


def find_isomorphism(
    a: WeightedMultigraph, b: WeightedMultigraph, colors: bool = False
) -> dict[int, int] | None:
    """A weight-preserving vertex bijection ``a -> b``, or None."""
    def match(x: dict, y: dict) -> bool:
        return x["weight"] == y["weight"] and (not colors or x["color"] == y["color"])

    gm = nx.algorithms.isomorphism.GraphMatcher(a.to_networkx(), b.to_networkx(), edge_match=match)
    for m in gm.isomorphisms_iter():
        return dict(m)
    return None


def connected_components(g: WeightedMultigraph) -> list[list[int]]:
    return [sorted(c) for c in nx.connected_components(g.to_networkx())]
