"""Planarity tests, rotation systems and small-graph embedding enumeration.

Rotations list the neighbours of each vertex in counter-clockwise order.
Faces are traced with ``next(u -> v) = (v -> w)`` where ``w`` precedes
``u`` in the rotation at ``v``; this walks the face to the left of each dart.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import BudgetExceeded
from .graphcore import WeightedMultigraph

Rotation = dict[int, tuple[int, ...]]


def is_planar(g: WeightedMultigraph | nx.Graph) -> bool:
    """Planarity of the underlying graph (weights are irrelevant)."""
    h = g.to_networkx() if isinstance(g, WeightedMultigraph) else g
    return bool(nx.check_planarity(h)[0])


def kuratowski_subgraph(g: WeightedMultigraph | nx.Graph) -> nx.Graph | None:
    """A K5 or K3,3 subdivision of a nonplanar graph, else None."""
    h = g.to_networkx() if isinstance(g, WeightedMultigraph) else g
    planar, cert = nx.check_planarity(h, counterexample=True)
    return None if planar else cert


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> list[list[tuple[int, int]]]:
    """Faces of a rotation system as lists of darts ``(u, v)``."""
    pos = {v: {w: i for i, w in enumerate(rot)} for v, rot in rotation.items()}
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in rotation:
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            face = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                a, b = dart
                rb = rotation[b]
                dart = (b, rb[pos[b][a] - 1])
            faces.append(face)
    return faces


def euler_characteristic(rotation: Mapping[int, Sequence[int]]) -> int:
    n = len(rotation)
    m = sum(len(r) for r in rotation.values()) // 2
    return n - m + len(trace_faces(rotation))


def _n_components(rotation: Mapping[int, Sequence[int]]) -> int:
    h = nx.Graph()
    h.add_nodes_from(rotation)
    h.add_edges_from((u, v) for u, r in rotation.items() for v in r)
    return nx.number_connected_components(h)


def is_plane_rotation(rotation: Mapping[int, Sequence[int]]) -> bool:
    """Genus-0 check.  Faces are traced per component, so each nontrivial
    component contributes ``V - E + F = 2`` and an isolated vertex 1."""
    isolated = sum(1 for r in rotation.values() if not r)
    c = _n_components(rotation)
    return euler_characteristic(rotation) == 2 * (c - isolated) + isolated


@dataclass(frozen=True)
class Embedding:
    """A rotation system (counter-clockwise neighbour order at each vertex)."""

    rotation: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def from_dict(cls, rot: Mapping[int, Sequence[int]]) -> "Embedding":
        return cls(tuple(sorted((v, tuple(r)) for v, r in rot.items())))

    @property
    def rot(self) -> Rotation:
        return dict(self.rotation)

    def faces(self) -> list[list[tuple[int, int]]]:
        return trace_faces(self.rot)

    @property
    def n_faces(self) -> int:
        return len(self.faces())

    def euler_ok(self) -> bool:
        return is_plane_rotation(self.rot)

    def reflected(self) -> "Embedding":
        return Embedding(tuple((v, tuple(reversed(r))) for v, r in self.rotation))

    def face_sizes(self) -> list[int]:
        return sorted(len(f) for f in self.faces())


def planar_embedding(g: WeightedMultigraph | nx.Graph) -> Embedding | None:
    h = g.to_networkx() if isinstance(g, WeightedMultigraph) else g
    planar, emb = nx.check_planarity(h)
    if not planar:
        return None
    # networkx stores clockwise order
    return Embedding.from_dict({v: tuple(reversed(list(emb.neighbors_cw_order(v)))) for v in emb.nodes})


# -- enumeration ---------------------------------------------------------------------


@dataclass
class ReducedGraph:
    """Simple graph with degree-2 vertices suppressed where no parallel edge would arise."""

    graph: nx.Graph
    suppressed: list[int]


def reduce_for_embedding(g: WeightedMultigraph) -> ReducedGraph:
    """Suppress degree-2 vertices; each new edge remembers the weights along its path."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for e in g.edges:
        h.add_edge(e.u, e.v, path=(e.weight,), color=e.color.value)

    def oriented(x: int, y: int) -> tuple:
        # weights along the path from x to y ("path" is stored from the smaller id)
        p = h.edges[x, y]["path"]
        return p if x < y else tuple(reversed(p))

    gone = []
    changed = True
    while changed:
        changed = False
        for v in sorted(h.nodes):
            if h.degree(v) != 2:
                continue
            a, b = sorted(h.neighbors(v))
            if h.has_edge(a, b):
                continue
            path = oriented(a, v) + oriented(v, b)
            colors = {h.edges[a, v]["color"], h.edges[v, b]["color"]}
            h.remove_node(v)
            h.add_edge(a, b, path=path, color=colors.pop() if len(colors) == 1 else "mixed")
            gone.append(v)
            changed = True
    for _, _, data in h.edges(data=True):
        data["label"] = min(data["path"], tuple(reversed(data["path"])))
    return ReducedGraph(h, gone)


def rotation_system_count(h: nx.Graph) -> int:
    return math.prod(math.factorial(max(d - 1, 0)) for _, d in h.degree())


def _all_rotations(h: nx.Graph) -> Iterable[Rotation]:
    verts = sorted(h.nodes)
    choices = []
    for v in verts:
        nb = sorted(h.neighbors(v))
        if len(nb) <= 2:
            choices.append([tuple(nb)])
        else:
            choices.append([(nb[0],) + p for p in itertools.permutations(nb[1:])])
    for combo in itertools.product(*choices):
        yield dict(zip(verts, combo))


def _canon_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


def _key(rot: Mapping[int, Sequence[int]]) -> tuple:
    return tuple((v, _canon_cycle(list(rot[v]))) for v in sorted(rot))


def graph_automorphisms(h: nx.Graph, labelled: bool = True, limit: int = 100000) -> list[dict[int, int]]:
    """Automorphisms of ``h``; with ``labelled`` they must preserve edge path/color data."""
    match = None
    if labelled:
        def match(x: dict, y: dict) -> bool:
            return x.get("label") == y.get("label") and x.get("color") == y.get("color")
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h, edge_match=match)
    out = []
    for m in gm.isomorphisms_iter():
        out.append(dict(m))
        if len(out) >= limit:
            break
    return out


def _apply(rot: Mapping[int, Sequence[int]], phi: Mapping[int, int], reflect: bool) -> Rotation:
    out = {}
    for v, r in rot.items():
        img = [phi[w] for w in r]
        out[phi[v]] = tuple(reversed(img)) if reflect else tuple(img)
    return out


def plane_rotations(h: nx.Graph, budget: int = 10**6) -> list[Rotation]:
    total = rotation_system_count(h)
    if total > budget:
        raise BudgetExceeded(f"{total} rotation systems exceed the budget of {budget}")
    return [r for r in _all_rotations(h) if is_plane_rotation(r)]


def embedding_classes(
    rotations: Sequence[Rotation],
    automorphisms: Sequence[Mapping[int, int]],
    reflection: bool,
) -> list[Rotation]:
    """One representative per orbit of the given symmetries."""
    reps: dict[tuple, Rotation] = {}
    flips = (False, True) if reflection else (False,)
    for rot in rotations:
        key = min(_key(_apply(rot, phi, f)) for phi in automorphisms for f in flips)
        reps.setdefault(key, rot)
    return [reps[k] for k in sorted(reps)]


def enumerate_small_embeddings(
    g: WeightedMultigraph,
    budget: int = 10**6,
    reflection: bool = True,
    automorphisms: bool = True,
    labelled: bool = True,
) -> list[Embedding]:
    """All planar embeddings of the reduced graph up to the chosen equivalence.

    The graph is first reduced by suppressing degree-2 vertices (bundle
    weights become path labels).  By default two embeddings are equivalent
    if a label-preserving automorphism maps one onto the other, possibly
    after reversing all rotations (mirror image).
    """
    h = reduce_for_embedding(g).graph
    rots = plane_rotations(h, budget)
    autos = graph_automorphisms(h, labelled) if automorphisms else [{v: v for v in h.nodes}]
    return [Embedding.from_dict(r) for r in embedding_classes(rots, autos, reflection)]


def embedding_class_report(g: WeightedMultigraph, budget: int = 10**6) -> dict:
    """Class counts under every combination of the equivalence choices."""
    red = reduce_for_embedding(g)
    h = red.graph
    rots = plane_rotations(h, budget)
    ident = [{v: v for v in h.nodes}]
    lab = graph_automorphisms(h, True)
    unlab = graph_automorphisms(h, False)
    return {
        "reduced_vertices": h.number_of_nodes(),
        "reduced_edges": h.number_of_edges(),
        "rotation_systems": rotation_system_count(h),
        "plane_rotation_systems": len(rots),
        "labelled_automorphisms": len(lab),
        "unlabelled_automorphisms": len(unlab),
        "classes": {
            "identity": len(rots),
            "reflection": len(embedding_classes(rots, ident, True)),
            "labelled_automorphism": len(embedding_classes(rots, lab, False)),
            "labelled_automorphism+reflection": len(embedding_classes(rots, lab, True)),
            "automorphism+reflection": len(embedding_classes(rots, unlab, True)),
        },
    }
