"""Exact crossing numbers of small weighted graphs, plus upper-bound search.

``exact_cr`` decides ``cr(G) <= k`` for ``k = lb, lb + 1, ...``.  Each
decision is a branch-and-bound over planarizations: while the current
planarization is nonplanar, take a Kuratowski subdivision ``K`` in it; some
new crossing of any completing drawing must involve two segments lying on
independent Kuratowski paths of ``K`` (otherwise the drawing of ``K`` would
have all independent pairs crossing evenly, and ``K`` would be planar by the
Hanani-Tutte theorem).  So the search branches over those segment pairs.
The segment fixes the position of the new crossing along both bundles, so
crossing orders are enumerated implicitly.

Only good drawings are searched (no pair crosses twice, adjacent bundles
never cross) and every bundle is kept as a unit, both of which are
without loss of generality for optimal drawings.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import networkx as nx

from .drawing import CrossingPoint, Drawing, is_certificate, weighted_crossing_count
from .errors import BudgetExceeded
from .graphcore import EdgeBundle, WeightedMultigraph
from .heuristic import planarize_heuristic

log = logging.getLogger(__name__)


@dataclass
class SolverBudget:
    max_crossings: int = 64
    node_limit: int = 2_000_000
    time_limit: float = 300.0
    restarts: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.max_crossings, self.node_limit, self.restarts) < 1 or self.time_limit <= 0:
            raise ValueError("budget fields must be positive")


class Status(str, Enum):
    EXACT = "Exact"
    BOUNDS_ONLY = "BoundsOnly"
    TIMEOUT = "Timeout"


@dataclass
class SolveResult:
    lower_bound: int
    upper_bound: int
    witness: Drawing | None
    status: Status
    stats: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lower_bound > self.upper_bound:
            raise ValueError("lower bound exceeds upper bound")
        if self.status == Status.EXACT:
            if self.lower_bound != self.upper_bound or self.witness is None:
                raise ValueError("an exact result needs matching bounds and a witness")
            if weighted_crossing_count(self.witness) != self.upper_bound:
                raise ValueError("witness count differs from the reported value")

    @property
    def value(self) -> int | None:
        return self.upper_bound if self.status == Status.EXACT else None

    def to_dict(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "status": self.status.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "stats": self.stats,
        }


class _Clock:
    def __init__(self, budget: SolverBudget) -> None:
        self.budget = budget
        self.start = time.monotonic()
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise BudgetExceeded(f"node limit {self.budget.node_limit} reached")
        if self.nodes % 64 == 0 and time.monotonic() - self.start > self.budget.time_limit:
            raise BudgetExceeded(f"time limit {self.budget.time_limit}s reached")


# -- simple lower bounds ------------------------------------------------------------------


def euler_lower_bound(g: WeightedMultigraph | nx.Graph) -> int:
    """``m - 3n + 6`` on the simple bundle graph (girth-aware), summed over blocks.

    Every crossing costs at least 1 and the bundle graph has crossing number
    at most that of ``g``, so this bounds ``cr(g)`` from below.
    """
    h = g.to_networkx() if isinstance(g, WeightedMultigraph) else g
    total = 0
    for comp in nx.biconnected_components(h):
        b = h.subgraph(comp)
        n, m = b.number_of_nodes(), b.number_of_edges()
        if n < 3:
            continue
        girth = 4 if nx.is_bipartite(b) else 3
        if girth == 3:
            total += max(0, m - 3 * n + 6)
        else:
            total += max(0, m - 2 * n + 4)
    return total


def _independent_path_pairs(k: nx.Graph) -> list[tuple[list[tuple[int, int]], list[tuple[int, int]]]]:
    """Pairs of vertex-disjoint branch paths of a Kuratowski subdivision."""
    branch = {v for v in k.nodes if k.degree(v) >= 3}
    paths: list[tuple[frozenset, list[tuple[int, int]]]] = []
    seen: set[frozenset] = set()
    for s in sorted(branch):
        for nb in sorted(k.neighbors(s)):
            if frozenset((s, nb)) in seen:
                continue
            walk = [(s, nb)]
            prev, cur = s, nb
            while cur not in branch:
                nxt = next(x for x in k.neighbors(cur) if x != prev)
                walk.append((cur, nxt))
                prev, cur = cur, nxt
            for a, b in walk:
                seen.add(frozenset((a, b)))
            paths.append((frozenset((s, cur)), walk))
    out = []
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            if not paths[i][0] & paths[j][0]:
                out.append((paths[i][1], paths[j][1]))
    return out


def kuratowski_edges(g: WeightedMultigraph, removed: frozenset[int] = frozenset()) -> list[int] | None:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    ids = {}
    for e in g.edges:
        if e.id not in removed:
            h.add_edge(e.u, e.v)
            ids[frozenset((e.u, e.v))] = e.id
    planar, cert = nx.check_planarity(h, counterexample=True)
    if planar:
        return None
    return sorted(ids[frozenset(x)] for x in cert.edges)


def skewness_lb(g: WeightedMultigraph, budget: SolverBudget | None = None) -> int:
    """Exact weighted skewness: least total weight of bundles whose removal leaves a planar graph.

    Deleting one bundle of every crossing pair planarizes any drawing, so the
    skewness never exceeds the crossing number.
    """
    budget = budget or SolverBudget()
    clock = _Clock(budget)
    failed: dict[frozenset, int] = {}

    def feasible(removed: frozenset[int], left: int) -> bool:
        clock.tick()
        if failed.get(removed, -1) >= left:
            return False
        kes = kuratowski_edges(g, removed)
        if kes is None:
            return True
        for eid in kes:
            w = g.edge(eid).weight
            if w <= left and feasible(removed | {eid}, left - w):
                return True
        failed[removed] = left
        return False

    k = 0
    while not feasible(frozenset(), k):
        k += 1
    return k


# -- planarization state for the exact search ------------------------------------------


class _State:
    __slots__ = ("h", "owner", "chain", "crossed", "next_id", "dummies")

    def __init__(self, g: WeightedMultigraph) -> None:
        self.h = nx.Graph()
        self.h.add_nodes_from(g.vertices)
        self.owner: dict[frozenset, int] = {}
        self.chain: dict[int, list[int]] = {}
        for e in g.edges:
            self.h.add_edge(e.u, e.v)
            self.owner[frozenset((e.u, e.v))] = e.id
            self.chain[e.id] = [e.u, e.v]
        self.crossed: frozenset[frozenset[int]] = frozenset()
        self.next_id = g.next_vertex_id()
        self.dummies: dict[int, tuple[int, int]] = {}

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.h = self.h.copy()
        s.owner = dict(self.owner)
        s.chain = {e: list(c) for e, c in self.chain.items()}
        s.crossed = self.crossed
        s.next_id = self.next_id
        s.dummies = dict(self.dummies)
        return s

    def cross(self, s1: tuple[int, int], s2: tuple[int, int]) -> "_State":
        out = self.copy()
        x = out.next_id
        out.next_id += 1
        e = out.owner.pop(frozenset(s1))
        f = out.owner.pop(frozenset(s2))
        for (p, q), own in ((s1, e), (s2, f)):
            out.h.remove_edge(p, q)
            out.h.add_edge(p, x)
            out.h.add_edge(x, q)
            out.owner[frozenset((p, x))] = own
            out.owner[frozenset((x, q))] = own
            ch = out.chain[own]
            for i in range(len(ch) - 1):
                if {ch[i], ch[i + 1]} == {p, q}:
                    ch.insert(i + 1, x)
                    break
        out.crossed = self.crossed | {frozenset((e, f))}
        out.dummies[x] = (e, f)
        return out

    def key(self) -> tuple:
        return tuple(
            (e, tuple(tuple(sorted(self.dummies[x])) for x in ch[1:-1]))
            for e, ch in sorted(self.chain.items()) if len(ch) > 2
        )

    def drawing(self, g: WeightedMultigraph) -> Drawing:
        cid = {x: i for i, x in enumerate(sorted(self.dummies))}
        crossings = tuple(CrossingPoint(cid[x], *sorted(self.dummies[x])) for x in sorted(self.dummies))
        orders = {e: tuple(cid[x] for x in ch[1:-1]) for e, ch in self.chain.items() if len(ch) > 2}
        return Drawing(g, crossings, orders)


def _edge_orbits(g: WeightedMultigraph, limit: int = 5000) -> list[dict[int, int]]:
    """Edge permutations induced by weight-preserving automorphisms (at most ``limit``)."""
    h = g.to_networkx()
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h, edge_match=lambda a, b: a["weight"] == b["weight"])
    out = []
    for phi in gm.isomorphisms_iter():
        out.append({e.id: g.edge_between(phi[e.u], phi[e.v]).id for e in g.edges})
        if len(out) >= limit:
            break
    return out


def _decide(g: WeightedMultigraph, k: int, clock: _Clock, symmetry: list[dict[int, int]]) -> _State | None:
    """A good drawing with weighted count ``<= k``, or None if none exists."""
    weights = {e.id: e.weight for e in g.edges}
    min_w = min(weights.values())
    adjacent = {e.id: {f.id for f in g.edges if f.touches(e)} for e in g.edges}
    failed: dict[tuple, int] = {}

    def candidates(st: _State, cert: nx.Graph, left: int) -> list[tuple[int, tuple, tuple]]:
        out = {}
        for p1, p2 in _independent_path_pairs(cert):
            for s1 in p1:
                e = st.owner[frozenset(s1)]
                for s2 in p2:
                    f = st.owner[frozenset(s2)]
                    if e == f or f in adjacent[e] or frozenset((e, f)) in st.crossed:
                        continue
                    if set(s1) & set(s2):
                        continue
                    c = weights[e] * weights[f]
                    if c > left:
                        continue
                    key = frozenset((frozenset(s1), frozenset(s2)))
                    if key not in out:
                        a, b = (s1, s2) if e < f else (s2, s1)
                        out[key] = (c, tuple(sorted(a)), tuple(sorted(b)))
        return sorted(out.values())

    def search(st: _State, left: int, root: bool) -> _State | None:
        clock.tick()
        planar, cert = nx.check_planarity(st.h, counterexample=left >= min_w * min_w)
        if planar:
            return st
        if left < min_w * min_w:
            return None
        key = st.key()
        if failed.get(key, -1) >= left:
            return None
        if euler_lower_bound(st.h) > left:
            failed[key] = left
            return None
        cands = candidates(st, cert, left)
        if root and symmetry:
            cands = _orbit_representatives(cands, st, symmetry)
        for c, s1, s2 in cands:
            res = search(st.cross(s1, s2), left - c, False)
            if res is not None:
                return res
        failed[key] = left
        return None

    return search(_State(g), k, True)


def _orbit_representatives(cands, st: _State, symmetry: list[dict[int, int]]):
    """At the root all segments are whole bundles; keep one pair per automorphism orbit."""
    pair_of = {}
    for c, s1, s2 in cands:
        pair_of[frozenset((st.owner[frozenset(s1)], st.owner[frozenset(s2)]))] = (c, s1, s2)
    kept, covered = [], set()
    for pair in sorted(pair_of, key=lambda p: (pair_of[p][0], sorted(p))):
        if pair in covered:
            continue
        kept.append(pair_of[pair])
        for phi in symmetry:
            covered.add(frozenset(phi[e] for e in pair))
    return kept


# -- reductions -------------------------------------------------------------------------


@dataclass
class _Suppression:
    new: EdgeBundle  # the bundle a-b replacing the path
    light: EdgeBundle  # the lighter half, which inherits all crossings
    heavy: EdgeBundle
    vertex: int


def _suppress_degree2(g: WeightedMultigraph) -> tuple[WeightedMultigraph, list[_Suppression]]:
    """Replace ``a - v - b`` by a bundle ``ab`` of the smaller weight when ``a, b`` are non-adjacent."""
    ops: list[_Suppression] = []
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            inc = g.incident(v)
            if len(inc) != 2:
                continue
            e1, e2 = inc
            a, b = e1.other(v), e2.other(v)
            if a == b or g.edge_between(a, b) is not None:
                continue
            light, heavy = sorted((e1, e2), key=lambda e: (e.weight, e.id))
            new = EdgeBundle(light.id, a, b, light.weight, light.color)
            h = g.without_vertices([v])
            g = WeightedMultigraph(h.labels, [*h.edges, new])
            ops.append(_Suppression(new, light, heavy, v))
            changed = True
            break
    return g, ops


def _lift(d: Drawing, target: WeightedMultigraph, op: _Suppression) -> Drawing:
    """Undo one suppression: the lighter half carries the crossings of the merged bundle."""
    orders = dict(d.orders)
    seq = orders.pop(op.new.id, ())
    light = op.light
    # the merged bundle runs new.u -> new.v; the light half joins `end` and the suppressed vertex
    end = light.other(op.vertex)
    forward = light.u == end if end == op.new.u else light.u == op.vertex
    seq_l = tuple(seq) if forward else tuple(reversed(seq))
    if seq_l:
        orders[light.id] = seq_l
    return Drawing(target, d.crossings, orders)


def _blocks(g: WeightedMultigraph) -> list[WeightedMultigraph]:
    h = g.to_networkx()
    out = []
    for comp in nx.biconnected_component_edges(h):
        eids = {h.edges[u, v]["id"] for u, v in comp}
        verts = {x for uv in comp for x in uv}
        sub = g.edge_subgraph(eids).induced_subgraph(verts)
        out.append(sub)
    return out


def _merge(g: WeightedMultigraph, parts: list[Drawing]) -> Drawing:
    crossings, orders = [], {}
    for d in parts:
        shift = len(crossings)
        crossings += [CrossingPoint(c.id + shift, c.a, c.b) for c in d.crossings]
        for e, o in d.orders.items():
            orders[e] = tuple(c + shift for c in o)
    return Drawing(g, tuple(crossings), orders)


# -- public entry points ------------------------------------------------------------------


def heuristic_upper(g: WeightedMultigraph, budget: SolverBudget | None = None, target: int | None = None) -> Drawing:
    """Best drawing found by planar-subgraph insertion with seeded restarts."""
    budget = budget or SolverBudget()
    d, stats = planarize_heuristic(g, seed=budget.seed, restarts=budget.restarts, target=target)
    d.meta = {"method": "heuristic", "restarts": stats.restarts, "best_restart": stats.best_restart}
    return d


def _exact_block(
    g: WeightedMultigraph, budget: SolverBudget, clock: _Clock, upper: Drawing, symmetry: bool
) -> tuple[int, int, Drawing | None, dict]:
    reduced, ops = _suppress_degree2(g)
    stats = {"vertices": reduced.n_vertices, "bundles": reduced.n_edges, "suppressed": len(ops)}
    lb = euler_lower_bound(reduced)
    ub = weighted_crossing_count(upper)
    if ub == 0:
        return 0, 0, upper, stats
    sym = _edge_orbits(reduced) if symmetry else []
    stats["automorphisms"] = len(sym)
    k = max(lb, 0)
    found: _State | None = None
    try:
        while k < ub and k <= budget.max_crossings:
            found = _decide(reduced, k, clock, sym)
            if found is not None:
                break
            k += 1
    except BudgetExceeded:
        stats["interrupted_at_k"] = k
        return k, ub, upper, stats
    if found is None:
        if k >= ub:  # every smaller value was refuted: the heuristic drawing is optimal
            return ub, ub, upper, stats
        return k, ub, upper, stats
    d = found.drawing(reduced)
    for op, prev in zip(reversed(ops), _intermediates(g, ops)[::-1]):
        d = _lift(d, prev, op)
    value = weighted_crossing_count(d)
    return value, value, d, stats


def _intermediates(g: WeightedMultigraph, ops: list[_Suppression]) -> list[WeightedMultigraph]:
    """Graphs before each suppression (``out[i]`` is the input of ``ops[i]``)."""
    out = []
    cur = g
    for op in ops:
        out.append(cur)
        h = cur.without_vertices([op.vertex])
        cur = WeightedMultigraph(h.labels, [*h.edges, op.new])
    return out


def exact_cr(g: WeightedMultigraph, budget: SolverBudget | None = None, symmetry: bool = True) -> SolveResult:
    """Crossing number by block decomposition, degree-2 suppression and branch-and-bound."""
    budget = budget or SolverBudget()
    clock = _Clock(budget)
    lower, upper, parts, stats = 0, 0, [], {"blocks": []}
    exact = True
    for block in _blocks(g):
        if block.n_edges < 6:  # fewer than 6 bundles: always planar
            continue
        heur = heuristic_upper(block, budget)
        lo, hi, d, st = _exact_block(block, budget, clock, heur, symmetry)
        st.update({"lower": lo, "upper": hi})
        stats["blocks"].append(st)
        lower += lo
        upper += hi
        if lo < hi:
            exact = False
        if d is not None and d.crossings:
            parts.append(d)
    stats["nodes"] = clock.nodes
    stats["seconds"] = round(time.monotonic() - clock.start, 3)
    witness = _merge(g, parts)
    if not is_certificate(witness):  # pragma: no cover - internal consistency guard
        raise AssertionError("assembled witness is not a valid drawing")
    if exact:
        return SolveResult(lower, upper, witness, Status.EXACT, stats)
    timed_out = any("interrupted_at_k" in b for b in stats["blocks"])
    return SolveResult(lower, weighted_crossing_count(witness), witness,
                       Status.TIMEOUT if timed_out else Status.BOUNDS_ONLY, stats)


def improve_below(
    g: WeightedMultigraph,
    c: int,
    budget: SolverBudget | None = None,
    template: Callable[[], Drawing | None] | None = None,
    exact_fallback: bool = True,
) -> Drawing | None:
    """A certified drawing of ``g`` with fewer than ``c`` crossings, if one is found.

    Tries ``template`` first, then heuristic restarts, then the exact search
    (which settles the question when it completes within budget).
    """
    budget = budget or SolverBudget()
    if template is not None:
        d = template()
        if d is not None and d.count < c and is_certificate(d):
            d.meta.setdefault("method", "template")
            return d
    restarts = max(budget.restarts, 1)
    d = heuristic_upper(g, SolverBudget(budget.max_crossings, budget.node_limit, budget.time_limit,
                                        restarts, budget.seed), target=c - 1)
    if d.count < c and is_certificate(d):
        return d
    for extra in range(1, 4):  # widen the restart pool before giving up on search
        d = heuristic_upper(g, SolverBudget(budget.max_crossings, budget.node_limit, budget.time_limit,
                                            restarts * 4, budget.seed + extra), target=c - 1)
        if d.count < c and is_certificate(d):
            return d
    if exact_fallback:
        res = exact_cr(g, budget)
        if res.witness is not None and res.upper_bound < c:
            res.witness.meta = {"method": "exact"}
            return res.witness
    return None
