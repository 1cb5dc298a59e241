"""Planarization-based upper bounds: planar subgraph plus dual shortest-path insertion.

The working structure is an embedded planarization: a rotation system over
original vertices and crossing dummies, the chain of points along every
bundle, and the owner bundle of every segment.  Bundles are inserted along
weighted shortest paths in the dual (crossing a segment of ``f`` while
routing ``e`` costs ``w(e) * w(f)``), never crossing an adjacent bundle or a
bundle already crossed.  Improvement moves remove and reinsert single
bundles or whole vertices and are accepted when they do not increase cost.
"""

from __future__ import annotations

import copy
import heapq
import random
from dataclasses import dataclass

import networkx as nx

from .drawing import CrossingPoint, Drawing
from .graphcore import EdgeBundle, WeightedMultigraph
from .planarity import trace_faces

Seg = tuple[int, int]


def _seg(p: int, q: int) -> Seg:
    return (p, q) if p < q else (q, p)


class EmbeddedPlanarization:
    def __init__(self, g: WeightedMultigraph) -> None:
        self.g = g
        self.rot: dict[int, list[int]] = {v: [] for v in g.vertices}
        self.chain: dict[int, list[int]] = {}
        self.owner: dict[Seg, int] = {}
        self.dummy: dict[int, tuple[int, int]] = {}
        self._next = g.next_vertex_id()
        self._faces_cache: tuple | None = None

    # -- bookkeeping ---------------------------------------------------------

    def clone(self) -> "EmbeddedPlanarization":
        other = copy.copy(self)
        other.rot = {v: list(r) for v, r in self.rot.items()}
        other.chain = {e: list(c) for e, c in self.chain.items()}
        other.owner = dict(self.owner)
        other.dummy = dict(self.dummy)
        other._faces_cache = None
        return other

    def cost(self) -> int:
        w = self.g.edge
        return sum(w(a).weight * w(b).weight for a, b in self.dummy.values())

    def edge_cost(self, e: int) -> int:
        w = self.g.edge
        return sum(w(a).weight * w(b).weight for x, (a, b) in self.dummy.items() if e in (a, b))

    @property
    def inserted(self) -> set[int]:
        return set(self.chain)

    def faces(self) -> tuple[list[list[tuple[int, int]]], dict[tuple[int, int], int]]:
        if self._faces_cache is None:
            faces = trace_faces({v: r for v, r in self.rot.items() if r})
            where = {d: i for i, f in enumerate(faces) for d in f}
            self._faces_cache = (faces, where)
        return self._faces_cache

    def _touch(self) -> None:
        self._faces_cache = None

    def load_plane_subgraph(self, edges: list[EdgeBundle], rotation: dict[int, list[int]]) -> None:
        for v, r in rotation.items():
            self.rot[v] = list(r)
        for e in edges:
            self.chain[e.id] = [e.u, e.v]
            self.owner[_seg(e.u, e.v)] = e.id
        self._touch()

    # -- insertion -----------------------------------------------------------

    def _route(
        self, e: EdgeBundle, sources: dict[int, tuple], targets: set[int]
    ) -> tuple[int, list[tuple[int, int]], int] | None:
        """Dijkstra over faces.  Returns (cost, crossed darts, final face)."""
        faces, where = self.faces()
        g = self.g
        we = e.weight
        dist: dict[int, int] = {}
        heap = [(0, f, ()) for f in sorted(sources)]
        heapq.heapify(heap)
        # path crossings kept per label so the same bundle is never crossed twice
        while heap:
            d, f, path = heapq.heappop(heap)
            if f in dist:
                continue
            dist[f] = d
            if f in targets:
                return d, [dart for dart, _ in path], f
            used = {own for _, own in path}
            for (p, q) in faces[f]:
                own = self.owner[_seg(p, q)]
                if own in used:
                    continue
                o = g.edge(own)
                if o.touches(e):
                    continue
                nf = where[(q, p)]
                if nf in dist or nf == f:
                    continue
                heapq.heappush(heap, (d + we * o.weight, nf, path + (((p, q), own),)))
        return None

    def _angle_faces(self, v: int) -> dict[int, tuple[int, int]]:
        faces, where = self.faces()
        out = {}
        for w in self.rot[v]:
            out.setdefault(where[(v, w)], (v, w))
        return out

    def insert_edge(self, eid: int, home_face: dict[int, int] | None = None) -> int | None:
        """Insert bundle ``eid`` optimally into the fixed embedding.

        ``home_face`` gives the face of an isolated endpoint.  Returns the
        insertion cost or None if no admissible route exists.
        """
        e = self.g.edge(eid)
        a, b = e.u, e.v
        home_face = home_face or {}
        if self.rot[a]:
            src = self._angle_faces(a)
        else:
            src = {home_face[a]: None}
        if self.rot[b]:
            tgt_angles = self._angle_faces(b)
        else:
            tgt_angles = {home_face[b]: None}
        res = self._route(e, src, set(tgt_angles))
        if res is None:
            return None
        cost, darts, last = res
        faces, where = self.faces()
        start_face = where[darts[0]] if darts else last
        a_dart = src[start_face]
        b_dart = tgt_angles[last]

        pts = []
        for (p, q) in darts:
            x = self._next
            self._next += 1
            f_own = self.owner.pop(_seg(p, q))
            self.rot[p][self.rot[p].index(q)] = x
            self.rot[q][self.rot[q].index(p)] = x
            self.rot[x] = [q, -1, p, -2]  # -1 / -2: previous / next point on e
            ch = self.chain[f_own]
            i = _chain_index(ch, p, q)
            ch.insert(i + 1, x)
            self.owner[_seg(p, x)] = f_own
            self.owner[_seg(x, q)] = f_own
            self.dummy[x] = (f_own, eid)
            pts.append(x)
        seq = [a] + pts + [b]
        for i, x in enumerate(pts):
            r = self.rot[x]
            r[r.index(-1)] = seq[i]
            r[r.index(-2)] = seq[i + 2]
        _insert_after(self.rot[a], a_dart, seq[1])
        _insert_after(self.rot[b], b_dart, seq[-2])
        for p, q in zip(seq, seq[1:]):
            self.owner[_seg(p, q)] = eid
        self.chain[eid] = seq
        self._touch()
        return cost

    def remove_edge(self, eid: int) -> None:
        ch = self.chain.pop(eid)
        u, v = ch[0], ch[-1]
        self.rot[u].remove(ch[1])
        self.rot[v].remove(ch[-2])
        for p, q in zip(ch, ch[1:]):
            self.owner.pop(_seg(p, q), None)
        for x in ch[1:-1]:
            a, b = self.dummy.pop(x)
            f = a if b == eid else b
            fc = self.chain[f]
            i = fc.index(x)
            p, q = fc[i - 1], fc[i + 1]
            self.rot[p][self.rot[p].index(x)] = q
            self.rot[q][self.rot[q].index(x)] = p
            del fc[i]
            self.owner.pop(_seg(p, x))
            self.owner.pop(_seg(x, q))
            self.owner[_seg(p, q)] = f
            del self.rot[x]
        self._touch()

    # -- vertex moves ---------------------------------------------------------

    def face_distances(self, e: EdgeBundle, anchor: int) -> dict[int, int]:
        """Cost of routing bundle ``e`` from ``anchor`` to every face."""
        faces, where = self.faces()
        dist: dict[int, int] = {}
        heap = [(0, f) for f in sorted(self._angle_faces(anchor))]
        heapq.heapify(heap)
        while heap:
            d, f = heapq.heappop(heap)
            if f in dist:
                continue
            dist[f] = d
            for (p, q) in faces[f]:
                o = self.g.edge(self.owner[_seg(p, q)])
                if o.touches(e):
                    continue
                nf = where[(q, p)]
                if nf not in dist:
                    heapq.heappush(heap, (d + e.weight * o.weight, nf))
        return dist

    def reinsert_vertex(self, v: int, rng: random.Random) -> bool:
        """Move ``v`` (with all its bundles) to the best face; True if kept."""
        inc = [e for e in self.g.incident(v) if e.id in self.chain]
        if len(inc) < 2:
            return False
        before = self.cost()
        saved = self.clone()
        for e in inc:
            self.remove_edge(e.id)
        if not _connected(self.rot):
            self.__dict__.update(saved.__dict__)
            return False
        total: dict[int, int] = {}
        for e in inc:
            dist = self.face_distances(e, e.other(v))
            for f, d in dist.items():
                total[f] = total.get(f, 0) + d
            total = {f: d for f, d in total.items() if f in dist}
        if not total:
            self.__dict__.update(saved.__dict__)
            return False
        best = min(total.values())
        choices = sorted(f for f, d in total.items() if d == best)
        face = rng.choice(choices)
        order = sorted(inc, key=lambda e: (-e.weight, e.id))
        ok = self.insert_edge(order[0].id, home_face={v: face}) is not None
        for e in order[1:]:
            ok = ok and self.insert_edge(e.id) is not None
        if not ok or self.cost() > before:
            self.__dict__.update(saved.__dict__)
            return False
        return self.cost() < before

    # -- output ------------------------------------------------------------------

    def to_drawing(self) -> Drawing:
        cid = {x: i for i, x in enumerate(sorted(self.dummy))}
        crossings = tuple(CrossingPoint(cid[x], *sorted(self.dummy[x])) for x in sorted(self.dummy))
        orders = {e: tuple(cid[x] for x in ch[1:-1]) for e, ch in self.chain.items() if len(ch) > 2}
        return Drawing(self.g, crossings, orders)


def _chain_index(ch: list[int], p: int, q: int) -> int:
    for i in range(len(ch) - 1):
        if (ch[i], ch[i + 1]) in ((p, q), (q, p)):
            return i
    raise AssertionError("segment not on its owner's chain")


def _insert_after(rot: list[int], dart: tuple[int, int] | None, new: int) -> None:
    if dart is None:
        rot.append(new)
        return
    rot.insert(rot.index(dart[1]) + 1, new)


def _connected(rot: dict[int, list[int]]) -> bool:
    nodes = [v for v, r in rot.items() if r]
    if not nodes:
        return True
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        v = stack.pop()
        for w in rot[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


# -- driver -------------------------------------------------------------------------------


@dataclass
class HeuristicStats:
    restarts: int = 0
    best_restart: int = -1
    passes: int = 0


def _planar_subgraph(g: WeightedMultigraph, rng: random.Random, jitter: float | None) -> list[EdgeBundle]:
    """Greedy maximal planar subgraph: heavy spanning forest first, then heavy bundles.

    ``jitter`` perturbs the weight order; None means a uniformly random order.
    """
    def key(e: EdgeBundle) -> float:
        if jitter is None:
            return rng.random()
        return -(e.weight * (1.0 + jitter * rng.random()))

    edges = sorted(g.edges, key=lambda e: (key(e), e.id))
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    forest = nx.utils.UnionFind(g.vertices)
    chosen, rest = [], []
    for e in edges:
        if forest[e.u] != forest[e.v]:
            forest.union(e.u, e.v)
            chosen.append(e)
            h.add_edge(e.u, e.v)
        else:
            rest.append(e)
    for e in rest:
        h.add_edge(e.u, e.v)
        if nx.check_planarity(h)[0]:
            chosen.append(e)
        else:
            h.remove_edge(e.u, e.v)
    return chosen


def _embed(g: WeightedMultigraph, edges: list[EdgeBundle], rng: random.Random) -> dict[int, list[int]]:
    h = nx.Graph()
    nodes = list(g.vertices)
    rng.shuffle(nodes)
    h.add_nodes_from(nodes)
    es = list(edges)
    rng.shuffle(es)
    h.add_edges_from((e.u, e.v) for e in es)
    planar, emb = nx.check_planarity(h)
    assert planar
    return {v: list(reversed(list(emb.neighbors_cw_order(v)))) for v in h.nodes}


def _improve(pl: EmbeddedPlanarization, rng: random.Random, max_passes: int, vertex_moves: bool) -> int:
    passes = 0
    while passes < max_passes:
        passes += 1
        improved = False
        before = pl.cost()
        order = sorted(pl.chain, key=lambda e: (-pl.edge_cost(e), e))
        for eid in order:
            if pl.edge_cost(eid) == 0:
                continue
            old = pl.clone()
            old_cost = pl.cost()
            pl.remove_edge(eid)
            if not _connected(pl.rot) or pl.insert_edge(eid) is None or pl.cost() > old_cost:
                pl.__dict__.update(old.__dict__)
        if vertex_moves:
            verts = list(pl.g.vertices)
            rng.shuffle(verts)
            for v in verts:
                pl.reinsert_vertex(v, rng)
        if pl.cost() < before:
            improved = True
        if not improved:
            break
    return passes


def planarize_heuristic(
    g: WeightedMultigraph,
    seed: int = 0,
    restarts: int = 8,
    max_passes: int = 6,
    vertex_moves: bool = True,
    target: int | None = None,
) -> tuple[Drawing, HeuristicStats]:
    """Best drawing over seeded restarts; stops early once ``count <= target``."""
    stats = HeuristicStats()
    comps = [c for c in nx.connected_components(g.to_networkx())]
    if len(comps) > 1:
        return _per_component(g, comps, seed, restarts, max_passes, vertex_moves)
    best: Drawing | None = None
    best_cost = None
    for r in range(max(1, restarts)):
        rng = random.Random(seed * 100003 + r)
        stats.restarts += 1
        jitter = 0.0 if r == 0 else (None if r % 3 == 2 else 0.5 + rng.random())
        sub = _planar_subgraph(g, rng, jitter)
        pl = EmbeddedPlanarization(g)
        pl.load_plane_subgraph(sub, _embed(g, sub, rng))
        missing = sorted((e for e in g.edges if e.id not in pl.chain), key=lambda e: (-e.weight, e.id))
        if r % 2 == 1:
            rng.shuffle(missing)
        failed = False
        for e in missing:
            if pl.insert_edge(e.id) is None:
                failed = True
                break
        if failed:
            continue
        stats.passes += _improve(pl, rng, max_passes, vertex_moves)
        c = pl.cost()
        if best_cost is None or c < best_cost:
            best, best_cost, stats.best_restart = pl.to_drawing(), c, r
        if target is not None and best_cost <= target:
            break
    if best is None:  # every restart blocked: cannot happen for connected inputs
        raise RuntimeError("edge insertion failed on every restart")
    return best, stats


def _per_component(g, comps, seed, restarts, max_passes, vertex_moves):
    crossings: list[CrossingPoint] = []
    orders: dict[int, tuple[int, ...]] = {}
    stats = HeuristicStats()
    for comp in sorted(comps, key=min):
        sub = g.induced_subgraph(comp)
        if sub.n_edges == 0:
            continue
        d, st = planarize_heuristic(sub, seed, restarts, max_passes, vertex_moves)
        stats.restarts += st.restarts
        shift = len(crossings)
        crossings += [CrossingPoint(c.id + shift, c.a, c.b) for c in d.crossings]
        for e, o in d.orders.items():
            orders[e] = tuple(c + shift for c in o)
    return Drawing(g, tuple(crossings), orders), stats
