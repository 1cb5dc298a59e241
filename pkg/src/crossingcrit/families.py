"""Constructors for the 13-crossing-critical families and their local transforms.

Family members are indexed by half-integer parameters ``k_1, ..., k_m``.  They
are stored doubled (``2 * k_i``) so all arithmetic stays integral.

Spine layout: the uncontracted spine has positions ``0 .. 2k-1`` standing for
``x^1, y^1, x^2, y^2, ...``.  Block ``i`` (0-based) covers ``doubled_ks[i]``
consecutive positions and becomes the vertex ``z{i+1}``.  Wedge ``j`` hangs
off positions ``2j-2`` (via ``w1^j``) and ``2j-1`` (via ``w4^j``), so its two
attachment edges land on whichever ``z`` absorbed those positions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidAnchor, InvalidParams
from .graphcore import (
    EdgeColor,
    GraphBuilder,
    WeightedMultigraph,
    delete_edge,
    zip_product,
)

log = logging.getLogger(__name__)

RED, BLUE, GREEN, GRAY = EdgeColor.RED, EdgeColor.BLUE, EdgeColor.GREEN, EdgeColor.GRAY

SPINE_WEIGHT = 7
# red path u5-u4-u3-u2-u1-(spine) and its mirror image on the v side
_U_PATH_WEIGHTS = (4, 3, 4, 5)  # u5u4, u4u3, u3u2, u2u1
_END_WEIGHT = 7  # u1 to the first spine vertex, last spine vertex to v1
# (u index, v index, weight)
BLUE_BUNDLES = ((1, 4, 2), (4, 1, 2), (2, 3, 1), (3, 2, 1))


@dataclass(frozen=True)
class FamilyParams:
    """Half-integer parameters ``(k_1, ..., k_m)`` stored as ``2 * k_i``."""

    doubled_ks: tuple[int, ...]

    def __post_init__(self) -> None:
        ks = tuple(int(x) for x in self.doubled_ks)
        object.__setattr__(self, "doubled_ks", ks)
        if not ks:
            raise InvalidParams("need at least one parameter")
        if any(x < 1 for x in ks):
            raise InvalidParams(f"every k_i must be a positive half-integer, got {self}")
        if sum(ks) % 2:
            raise InvalidParams(f"k_1 + ... + k_m must be an integer, got {self}")

    @classmethod
    def from_ks(cls, ks: Iterable[float | int | str | Fraction]) -> "FamilyParams":
        doubled = []
        for k in ks:
            f = Fraction(str(k)) * 2
            if f.denominator != 1:
                raise InvalidParams(f"{k} is not a half-integer")
            doubled.append(int(f))
        return cls(tuple(doubled))

    @classmethod
    def parse(cls, text: str) -> "FamilyParams":
        """Parse ``"1,0.5,0.5,1"`` or ``"1,1/2,1/2,1"``."""
        return cls.from_ks(t.strip() for t in text.split(",") if t.strip())

    @property
    def m(self) -> int:
        return len(self.doubled_ks)

    @property
    def k(self) -> int:
        return sum(self.doubled_ks) // 2

    @property
    def ks(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled_ks)

    @property
    def criticality_ok(self) -> bool:
        """``m >= 3`` with ``k_1, k_m >= 1`` (or the base case ``(1, 1)``)."""
        d = self.doubled_ks
        if d == (2, 2):
            return True
        return self.m >= 3 and d[0] >= 2 and d[-1] >= 2

    @property
    def vertex_count(self) -> int:
        return 3 * self.k + self.m + 9

    def block_of_position(self) -> list[int]:
        """Block index (0-based) for each uncontracted spine position."""
        out = []
        for i, d in enumerate(self.doubled_ks):
            out.extend([i] * d)
        return out

    def __str__(self) -> str:
        return "(" + ",".join(str(k) for k in self.ks) + ")"

    def to_dict(self) -> dict:
        return {"doubled_ks": list(self.doubled_ks), "ks": [str(k) for k in self.ks]}


def _as_params(params: FamilyParams | Sequence[int]) -> FamilyParams:
    return params if isinstance(params, FamilyParams) else FamilyParams(tuple(params))


# -- the base graph and the generalized family ---------------------------------


def build_g13() -> WeightedMultigraph:
    """The 17-vertex base graph with its standard vertex names."""
    b = GraphBuilder()
    v = {}
    for name in ("u5", "u4", "u3", "u2", "u1", "x1", "x2", "v1", "v2", "v3", "v4", "v5",
                 "w1^1", "w4^1", "w2^2", "w1^2", "w4^2"):
        v[name] = b.add_vertex(name)
    red = [("u5", "u4", 4), ("u4", "u3", 3), ("u3", "u2", 4), ("u2", "u1", 5), ("u1", "x1", 7),
           ("x1", "x2", 7), ("x2", "v1", 7), ("v1", "v2", 5), ("v2", "v3", 4), ("v3", "v4", 3),
           ("v4", "v5", 4)]
    for a, c, w in red:
        b.add_edge(v[a], v[c], w, RED)
    for i, j, w in BLUE_BUNDLES:
        b.add_edge(v[f"u{i}"], v[f"v{j}"], w, BLUE)
    b.add_edge(v["u5"], v["x1"], 1, GREEN)
    b.add_edge(v["x2"], v["v5"], 1, GREEN)
    gray = [("u5", "w1^1", 2), ("w1^1", "w4^1", 1), ("w4^1", "w2^2", 2), ("w2^2", "u5", 1),
            ("w2^2", "w1^2", 2), ("w1^2", "w4^2", 1), ("w4^2", "v5", 2), ("v5", "w2^2", 1),
            ("w1^1", "x1", 1), ("x1", "w4^1", 1), ("w1^2", "x2", 1), ("x2", "w4^2", 1)]
    for a, c, w in gray:
        b.add_edge(v[a], v[c], w, GRAY)
    return b.build()


def _build_family(doubled: Sequence[int], spine_names: Sequence[str]) -> WeightedMultigraph:
    params = FamilyParams(tuple(doubled))
    k = params.k
    block = params.block_of_position()
    b = GraphBuilder()
    u = {i: b.add_vertex(f"u{i}") for i in (5, 4, 3, 2, 1)}
    z = [b.add_vertex(name) for name in spine_names]
    vv = {i: b.add_vertex(f"v{i}") for i in (1, 2, 3, 4, 5)}

    # w2^1 = u5, w3^k = v5, w3^(j-1) = w2^j
    w2 = {1: u[5]}
    for j in range(2, k + 1):
        w2[j] = b.add_vertex(f"w2^{j}")
    w3 = {j: w2[j + 1] for j in range(1, k)}
    w3[k] = vv[5]
    w1 = {}
    w4 = {}
    for j in range(1, k + 1):
        w1[j] = b.add_vertex(f"w1^{j}")
        w4[j] = b.add_vertex(f"w4^{j}")

    for (a, c), w in zip(((5, 4), (4, 3), (3, 2), (2, 1)), _U_PATH_WEIGHTS):
        b.add_edge(u[a], u[c], w, RED)
    b.add_edge(u[1], z[0], _END_WEIGHT, RED)
    for p in range(2 * k - 1):
        if block[p] != block[p + 1]:
            b.add_edge(z[block[p]], z[block[p + 1]], SPINE_WEIGHT, RED)
    b.add_edge(z[-1], vv[1], _END_WEIGHT, RED)
    for (a, c), w in zip(((1, 2), (2, 3), (3, 4), (4, 5)), reversed(_U_PATH_WEIGHTS)):
        b.add_edge(vv[a], vv[c], w, RED)

    for i, j, w in BLUE_BUNDLES:
        b.add_edge(u[i], vv[j], w, BLUE)
    b.add_edge(u[5], z[0], 1, GREEN)
    b.add_edge(z[-1], vv[5], 1, GREEN)

    for j in range(1, k + 1):
        b.add_edge(w1[j], w2[j], 2, GRAY)
        b.add_edge(w1[j], w4[j], 1, GRAY)
        b.add_edge(w2[j], w3[j], 1, GRAY)
        b.add_edge(w3[j], w4[j], 2, GRAY)
        b.add_edge(z[block[2 * j - 2]], w1[j], 1, GRAY)
        b.add_edge(z[block[2 * j - 1]], w4[j], 1, GRAY)
    return b.build()


def build_g13_family(params: FamilyParams | Sequence[int]) -> WeightedMultigraph:
    """``G_13^(k_1..k_m)``: ``G_13^k`` with each spine block contracted to ``z_i``."""
    params = _as_params(params)
    return _build_family(params.doubled_ks, [f"z{i + 1}" for i in range(params.m)])


def build_g13_k(k: int) -> WeightedMultigraph:
    """``G_13^k`` with its uncontracted spine ``x^1, y^1, ..., x^k, y^k``."""
    if k < 2:
        raise InvalidParams(f"G_13^k needs k >= 2, got {k}")
    names = [f"{s}^{i}" for i in range(1, k + 1) for s in ("x", "y")]
    return _build_family([1] * (2 * k), names)


def spine_vertices(g: WeightedMultigraph, params: FamilyParams | Sequence[int]) -> list[int]:
    return [g.vertex(f"z{i + 1}") for i in range(_as_params(params).m)]


def shrink_wedge(params: FamilyParams | Sequence[int], j: int) -> FamilyParams:
    """Merge two wedges hanging off spine vertex ``z_j`` (1-based): ``k_j -> k_j - 1``.

    Only the parameters change; rebuild with :func:`build_g13_family`.  The
    monotonicity guarantee is stated for ``k_j >= 2``; calls with
    ``k_j = 3/2`` are permitted and logged.
    """
    params = _as_params(params)
    if not 1 <= j <= params.m:
        raise InvalidParams(f"block index {j} outside 1..{params.m}")
    d = list(params.doubled_ks)
    if d[j - 1] < 3:
        raise InvalidParams(f"k_{j} = {params.ks[j - 1]} leaves no wedge to shrink (need k_j >= 3/2)")
    if d[j - 1] < 4:
        log.warning("shrink_wedge at k_%d = %s is below the k_j >= 2 range", j, params.ks[j - 1])
    d[j - 1] -= 2
    return FamilyParams(tuple(d))


def shrink_in_lemma_range(params: FamilyParams | Sequence[int], j: int) -> bool:
    return _as_params(params).doubled_ks[j - 1] >= 4


def shrink_wedge_graph(g: WeightedMultigraph, params: FamilyParams | Sequence[int], j: int) -> WeightedMultigraph:
    """The same shrink done by graph surgery on a built family member.

    Picks the first wedge pair ``i, i+1`` with ``y^i`` and ``x^(i+1)`` both in
    block ``j``, adds ``w1^i w4^(i+1)`` and ``w2^i w3^(i+1)`` (unit, gray) and
    deletes ``w4^i``, ``w3^i = w2^(i+1)`` and ``w1^(i+1)``.
    """
    params = _as_params(params)
    shrink_wedge(params, j)
    block = params.block_of_position()
    k = params.k
    for i in range(1, k):
        if block[2 * i - 1] == j - 1 and block[2 * i] == j - 1:
            break
    else:  # pragma: no cover - guarded by shrink_wedge's precondition
        raise InvalidParams("no wedge pair inside the block")

    def w(kind: int, idx: int) -> int:
        if kind == 2 and idx == 1:
            return g.vertex("u5")
        if kind == 3:
            return g.vertex("v5") if idx == k else w(2, idx + 1)
        return g.vertex(f"w{kind}^{idx}")

    h = g.with_edge(w(1, i), w(4, i + 1), 1, GRAY)
    h = h.with_edge(w(2, i), w(3, i + 1), 1, GRAY)
    return h.without_vertices([w(4, i), w(3, i), w(1, i + 1)])


def build_k33() -> WeightedMultigraph:
    b = GraphBuilder()
    left = [b.add_vertex(f"a{i}") for i in range(1, 4)]
    right = [b.add_vertex(f"b{i}") for i in range(1, 4)]
    for a in left:
        for c in right:
            b.add_edge(a, c)
    return b.build()


def build_kochol(twists: int = 4) -> WeightedMultigraph:
    """Möbius-belt family of 2-crossing-critical graphs.

    The belt consists of three strands (bottom, middle, top) and
    ``2 * twists - 1`` half-tiles of alternating orientation; each half-tile is
    a path ``A - B - C - D - E`` climbing from one outer strand through the
    middle strand to the apex ``C`` on the other outer strand and back.  The
    two belt ends are glued with a twist (bottom to top).  ``twists`` counts
    repeated tiles; 4 gives the usual picture with seven half-tiles and is
    the smallest member used for calibration.  One tile is planar.
    """
    if twists < 1:
        raise InvalidParams("need at least one tile")
    b = GraphBuilder()
    strands: dict[int, list[tuple[int, int]]] = {0: [], 2: []}  # y -> [(x, vertex)]
    mids: list[tuple[int, int]] = []  # (B, D) per half-tile
    for h in range(2 * twists - 1):
        x0 = 3 * h
        low, high = (0, 2) if h % 2 == 0 else (2, 0)
        A = b.add_vertex(f"t{h}a")
        B = b.add_vertex(f"t{h}b")
        C = b.add_vertex(f"t{h}c")
        D = b.add_vertex(f"t{h}d")
        E = b.add_vertex(f"t{h}e")
        for p, q in ((A, B), (B, C), (C, D), (D, E)):
            b.add_edge(p, q)
        strands[low] += [(x0, A), (x0 + 2, E)]
        strands[high].append((x0 + 1, C))
        mids.append((B, D))
    for i in range(len(mids)):
        b.add_edge(mids[i][1], mids[(i + 1) % len(mids)][0])
    for y in (0, 2):
        line = [v for _, v in sorted(strands[y])]
        for p, q in zip(line, line[1:]):
            b.add_edge(p, q)
    bottom = [v for _, v in sorted(strands[0])]
    top = [v for _, v in sorted(strands[2])]
    b.add_edge(bottom[0], top[-1])
    b.add_edge(top[0], bottom[-1])
    return b.build()


# -- degree-changing transforms ---------------------------------------------------


def transform_degree3(
    g: WeightedMultigraph, t1: int, s: int, t2: int, t3: int, h: int
) -> WeightedMultigraph:
    """Introduce a degree-3 vertex ``s'`` next to ``s``.

    Requires ``t1 s`` of weight ``h+1``, ``t2 s`` of weight ``h``, ``t3 s`` of
    weight 1, no other neighbours of ``s`` and ``deg(t1) <= h + 5``.  Then
    ``t1 s`` drops to weight ``h``, ``t3 s`` is deleted and ``s'`` is joined
    to ``t1``, ``t3`` and ``s`` by unit edges.
    """
    e1, e2, e3 = g.edge_between(t1, s), g.edge_between(t2, s), g.edge_between(t3, s)
    if e1 is None or e2 is None or e3 is None:
        raise InvalidAnchor("t1, t2, t3 must all be adjacent to s")
    if (e1.weight, e2.weight, e3.weight) != (h + 1, h, 1):
        raise InvalidAnchor(
            f"need weights (h+1, h, 1) = ({h + 1}, {h}, 1), got ({e1.weight}, {e2.weight}, {e3.weight})"
        )
    if set(g.neighbors(s)) != {t1, t2, t3}:
        raise InvalidAnchor(f"{g.label(s)} has neighbours beyond t1, t2, t3")
    if g.degree(t1) > h + 5:
        raise InvalidAnchor(f"deg({g.label(t1)}) = {g.degree(t1)} exceeds h + 5 = {h + 5}")
    out = delete_edge(g.with_weight(e1.id, h), e3.id)
    out, sp = out.with_vertex(f"{g.label(s)}'")
    for t in (t1, t3, s):
        out = out.with_edge(sp, t, 1, e3.color)
    return out


def transform_degree_split(
    g: WeightedMultigraph, t1: int, s: int, t2: int, h: int, a: int, b: int
) -> WeightedMultigraph:
    """Lower ``s`` to degree ``2b + a`` by rerouting weight ``h - b`` past it.

    Requires ``t1 s`` and ``s t2`` of weight ``h`` and exactly ``a`` in {1, 2}
    further unit bundles at ``s``, with ``a + 1 <= b <= h - 1``.  Both
    bundles at ``s`` drop to weight ``b`` and a bundle ``t1 t2`` of weight
    ``h - b`` is added.
    """
    e1, e2 = g.edge_between(t1, s), g.edge_between(s, t2)
    if e1 is None or e2 is None or t1 == t2:
        raise InvalidAnchor("t1 and t2 must be distinct neighbours of s")
    if e1.weight != h or e2.weight != h:
        raise InvalidAnchor(f"need t1s and st2 of weight h = {h}, got {e1.weight} and {e2.weight}")
    if a not in (1, 2):
        raise InvalidAnchor(f"a must be 1 or 2, got {a}")
    extra = [e for e in g.incident(s) if e.id not in (e1.id, e2.id)]
    if len(extra) != a or any(e.weight != 1 for e in extra):
        raise InvalidAnchor(
            f"{g.label(s)} must carry exactly a = {a} further unit edges, has weights "
            f"{[e.weight for e in extra]}"
        )
    if not a + 1 <= b <= h - 1:
        raise InvalidAnchor(f"need a + 1 <= b <= h - 1, got a={a}, b={b}, h={h}")
    out = g.with_weight(e1.id, b).with_weight(e2.id, b)
    return out.with_edge(t1, t2, h - b, e1.color)


# -- the explicit schedule for all degrees 3..d ------------------------------------


@dataclass
class Theorem3Construction:
    q: int
    d: int
    c: int
    params: FamilyParams
    graph: WeightedMultigraph
    base: WeightedMultigraph
    manifest: list[dict] = field(default_factory=list)

    @property
    def effective_d(self) -> int:
        return max(self.d, 14)


def theorem3_params(q: int, d: int) -> FamilyParams:
    """The half-integer schedule ``k_1..k_m`` with ``m = 1 + 3q(d' - 5)``, ``d' = max(d, 14)``.

    Index ``i`` below is 1-based as in the construction.  Degrees 5..14 are
    realised by splits inside the first ``27q`` indices; ``d < 14`` therefore
    uses the ``d = 14`` schedule, which covers every degree up to 14 anyway.
    """
    if q < 1 or d < 8:
        raise InvalidParams(f"need q >= 1 and d >= 8, got q={q}, d={d}")
    de = max(d, 14)
    m = 1 + 3 * q * (de - 5)
    dk = [0] * (m + 1)  # doubled, 1-based
    for i in range(1, m + 1, 3):
        dk[i] = 2
    for i in range(2, 12 * q, 3):
        dk[i] = dk[i + 1] = 2
    for i in range(12 * q + 2, 27 * q, 3):
        dk[i] = dk[i + 1] = 1
    for ell in range(15, de + 1):
        for i in range(3 * q * (ell - 6) + 2, 3 * q * (ell - 5), 3):
            dk[i] = ell - 14
            dk[i + 1] = 2 if ell % 2 == 0 else 1
    return FamilyParams(tuple(dk[1:]))


def theorem3_build(q: int, d: int, c: int) -> Theorem3Construction:
    """Build the graph with ``>= q`` vertices of every degree ``3..d`` that is meant to be ``c``-critical."""
    if c < 13:
        raise InvalidParams(f"need c >= 13, got {c}")
    params = theorem3_params(q, d)
    base = build_g13_family(params)
    g = base
    z = [None] + [g.vertex(f"z{i}") for i in range(1, params.m + 1)]
    manifest: list[dict] = []

    def split(i: int, a: int, b: int) -> None:
        nonlocal g
        g = transform_degree_split(g, z[i - 1], z[i], z[i + 1], SPINE_WEIGHT, a, b)
        manifest.append({"lemma": "degree_split", "vertex": f"z{i}", "a": a, "b": b,
                         "degree": 2 * b + a})

    # even degrees 8, 10, 12, 14 (a = 2, b = 3..6), then odd 5..13 (a = 1, b = 2..6)
    for blk, b in enumerate(range(3, 7)):
        for i in range(3 * q * blk + 2, 3 * q * (blk + 1), 3):
            split(i, 2, b)
    for blk, b in enumerate(range(2, 7)):
        start = 12 * q + 3 * q * blk + 2
        for i in range(start, start + 3 * q - 2, 3):
            split(i, 1, b)

    for j in range(2, q + 2):  # wedges 2..q+1: their w2 has degree 6
        t1 = g.vertex(f"w2^{j}")
        s = g.vertex(f"w1^{j}")
        t2 = g.vertex(f"w4^{j}")
        (t3,) = [x for x in g.neighbors(s) if x not in (t1, t2)]
        g = transform_degree3(g, t1, s, t2, t3, 1)
        manifest.append({"lemma": "degree3", "vertex": f"w1^{j}'", "wedge": j, "degree": 3})

    k33 = build_k33()
    transformed = {m["vertex"] for m in manifest}
    for copy in range(c - 13):
        anchor = _first_unit_cubic(g, transformed)
        manifest.append({"op": "zip_k33", "copy": copy + 1, "anchor": g.label(anchor)})
        g = zip_product(g, anchor, k33, k33.vertex("b3"), label_prefix=f"K{copy + 1}:")
    return Theorem3Construction(q, d, c, params, g, base, manifest)


def _first_unit_cubic(g: WeightedMultigraph, skip: set[str] = frozenset()) -> int:
    for v in g.vertices:
        if g.label(v) in skip:
            continue
        inc = g.incident(v)
        if len(inc) == 3 and all(e.weight == 1 for e in inc):
            return v
    raise InvalidAnchor("no degree-3 vertex with three unit bundles to zip at")


def theorem3_construct(q: int, d: int, c: int) -> WeightedMultigraph:
    return theorem3_build(q, d, c).graph
