"""Executable versions of the finite case analyses behind ``cr(G_13) >= 13``.

Blue bundles are classified as top, bottom or switching relative to the red
path.  Each case analysis below enumerates every classification and checks
the lower bound that the counting claims give for it.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graphcore import WeightedMultigraph

BLUE_WEIGHTS = (1, 1, 2, 2)

Multiset = tuple[int, ...]


def _ms(xs: Iterable[int]) -> Multiset:
    return tuple(sorted(xs))


@dataclass(frozen=True)
class BlueClassification:
    """Top (``e1``), bottom (``e2``) and switching (``es``) blue weights.

    ``e1`` and ``e2`` are interchangeable; :meth:`canonical` orders them.
    """

    e1: Multiset
    e2: Multiset
    es: Multiset

    def __post_init__(self) -> None:
        object.__setattr__(self, "e1", _ms(self.e1))
        object.__setattr__(self, "e2", _ms(self.e2))
        object.__setattr__(self, "es", _ms(self.es))
        if _ms(self.e1 + self.e2 + self.es) != BLUE_WEIGHTS:
            raise ValueError(f"{self} is not a partition of {BLUE_WEIGHTS}")

    @property
    def w1(self) -> int:
        return sum(self.e1)

    @property
    def w2(self) -> int:
        return sum(self.e2)

    @property
    def ws(self) -> int:
        return sum(self.es)

    def canonical(self) -> "BlueClassification":
        a, b = sorted((self.e1, self.e2), key=lambda s: (sum(s), len(s), s), reverse=True)
        return BlueClassification(a, b, self.es)

    def swapped(self) -> "BlueClassification":
        return BlueClassification(self.e2, self.e1, self.es)

    def key(self) -> tuple:
        c = self.canonical()
        return (c.e1, c.e2, c.es)

    def __str__(self) -> str:
        f = lambda s: "{" + ",".join(map(str, s)) + "}"
        return f"{f(self.e1)} {f(self.e2)} {f(self.es)}"


def bound_pairwise(c: BlueClassification) -> int:
    """Blue-blue crossings forced inside ``e1`` and inside ``e2``."""
    return sum(a * b for s in (c.e1, c.e2) for a, b in itertools.combinations(s, 2))


def bound_switching(c: BlueClassification) -> int:
    """Two refined crossings per unit of switching weight (one on each of ``P1``, ``P2``)."""
    return 2 * c.ws


def bound_green_paths(c: BlueClassification) -> int:
    """Crossings on ``Q1, Q1', Q2, Q2'``; the split ``p + q`` of switching weight is adversarial."""
    w1, w2, s = c.w1, c.w2, c.ws
    return min(2 * min(w1 + p, w2 + s - p) + 2 * min(w1 + s - p, w2 + p) for p in range(s + 1))


@dataclass(frozen=True)
class CaseRow:
    classification: BlueClassification
    col1: int
    col2: int
    col3: int

    @property
    def total(self) -> int:
        return self.col1 + self.col2 + self.col3

    def as_tuple(self) -> tuple:
        c = self.classification
        return (c.e1, c.e2, c.es, self.col1, self.col2, self.col3, self.total)

    def to_dict(self) -> dict:
        c = self.classification
        return {"e1": list(c.e1), "e2": list(c.e2), "es": list(c.es),
                "pairwise": self.col1, "switching": self.col2, "green": self.col3, "total": self.total}


def case_row(c: BlueClassification) -> CaseRow:
    return CaseRow(c, bound_pairwise(c), bound_switching(c), bound_green_paths(c))


def _sort_key(r: CaseRow) -> tuple:
    c = r.classification
    return (-c.ws, -len(c.es), c.e1, c.e2)


def enumerate_table1() -> list[CaseRow]:
    """Every top/bottom/switching split of the blue weights, ``{e1, e2}`` unordered."""
    seen: dict[tuple, CaseRow] = {}
    idx = range(len(BLUE_WEIGHTS))
    for labels in itertools.product((0, 1, 2), repeat=len(BLUE_WEIGHTS)):
        parts = [[BLUE_WEIGHTS[i] for i in idx if labels[i] == t] for t in (0, 1, 2)]
        c = BlueClassification(*parts).canonical()
        seen.setdefault(c.key(), case_row(c))
    return sorted(seen.values(), key=_sort_key)


# (E1, E2, Es, I', II', III', total) in canonical order
GOLDEN_TABLE1: tuple[tuple[Multiset, Multiset, Multiset, int, int, int, int], ...] = (
    ((), (), (1, 1, 2, 2), 0, 12, 0, 12),
    ((1,), (), (1, 2, 2), 0, 10, 2, 12),
    ((2,), (), (1, 1, 2), 0, 8, 4, 12),
    ((1,), (1,), (2, 2), 0, 8, 4, 12),
    ((1, 1), (), (2, 2), 1, 8, 4, 13),
    ((1, 2), (), (1, 2), 2, 6, 6, 14),
    ((2,), (1,), (1, 2), 0, 6, 6, 12),
    ((2,), (2,), (1, 1), 0, 4, 8, 12),
    ((2, 2), (), (1, 1), 4, 4, 4, 12),
    ((1, 1, 2), (), (2,), 5, 4, 4, 13),
    ((1, 2), (1,), (2,), 2, 4, 8, 14),
    ((2,), (1, 1), (2,), 1, 4, 8, 13),
    ((2,), (1, 2), (1,), 2, 2, 10, 14),
    ((2, 2), (1,), (1,), 4, 2, 6, 12),
    ((1, 2, 2), (), (1,), 8, 2, 2, 12),
    ((1, 2), (1, 2), (), 4, 0, 12, 16),
    ((1, 2, 2), (1,), (), 8, 0, 4, 12),
    ((2,), (1, 1, 2), (), 5, 0, 8, 13),
    ((2, 2), (1, 1), (), 5, 0, 8, 13),
    ((1, 1, 2, 2), (), (), 13, 0, 0, 13),
)


def golden_rows() -> list[CaseRow]:
    rows = []
    for e1, e2, es, a, b, c, tot in GOLDEN_TABLE1:
        row = CaseRow(BlueClassification(e1, e2, es), a, b, c)
        assert row.total == tot
        rows.append(row)
    return rows


def canonical_serialization(rows: Sequence[CaseRow]) -> str:
    """Rows with ``{e1, e2}`` put in canonical order, sorted, as compact JSON lines."""
    norm = [CaseRow(r.classification.canonical(), r.col1, r.col2, r.col3) for r in rows]
    norm.sort(key=_sort_key)
    return "\n".join(json.dumps(r.to_dict(), sort_keys=True) for r in norm) + "\n"


def table1_matches_golden(rows: Sequence[CaseRow] | None = None) -> tuple[bool, list[str]]:
    """Compare against the transcribed table; returns (ok, list of differences)."""
    rows = enumerate_table1() if rows is None else rows
    mine = {r.classification.key(): r for r in rows}
    diffs = []
    for g in golden_rows():
        r = mine.pop(g.classification.key(), None)
        if r is None:
            diffs.append(f"missing row {g.classification}")
        elif (r.col1, r.col2, r.col3, r.total) != (g.col1, g.col2, g.col3, g.total):
            diffs.append(
                f"row {g.classification}: got {(r.col1, r.col2, r.col3, r.total)}, "
                f"expected {(g.col1, g.col2, g.col3, g.total)}"
            )
    diffs += [f"extra row {r.classification}" for r in mine.values()]
    if not diffs and canonical_serialization(rows) != canonical_serialization(golden_rows()):
        diffs.append("canonical serializations differ")
    return not diffs, diffs


def in_canonical_order(rows: Sequence[CaseRow]) -> list[CaseRow]:
    """Rows reordered (and ``e1``/``e2`` oriented) in canonical order."""
    mine = {r.classification.key(): r for r in rows}
    out = []
    for g in golden_rows():
        r = mine[g.classification.key()]
        out.append(CaseRow(g.classification, r.col1, r.col2, r.col3))
    return out


def format_table(rows: Sequence[CaseRow]) -> str:
    f = lambda s: "{" + ",".join(map(str, s)) + "}"
    head = f"{'E1':<10}{'E2':<10}{'Es':<10}{'I':>4}{'II':>4}{'III':>5}{'total':>7}"
    lines = [head, "-" * len(head)]
    for r in rows:
        c = r.classification
        lines.append(f"{f(c.e1):<10}{f(c.e2):<10}{f(c.es):<10}{r.col1:>4}{r.col2:>4}{r.col3:>5}{r.total:>7}")
    return "\n".join(lines)


# -- the two embeddings of the red-gray subgraph ----------------------------------------

# blue bundles as (name, weight, u-end position, v-end position) along the red path,
# ordered u4, u3, u2, u1, x1, x2, v1, v2, v3, v4
_RED_POS = {"u4": 0, "u3": 1, "u2": 2, "u1": 3, "x1": 4, "x2": 5, "v1": 6, "v2": 7, "v3": 8, "v4": 9}
BLUE = (("u1v4", 2, "u1", "v4"), ("u4v1", 2, "u4", "v1"), ("u2v3", 1, "u2", "v3"), ("u3v2", 1, "u3", "v2"))

# per-bundle states: bottom, top, switching with the u end below / above
BOTTOM, TOP, SW_UBELOW, SW_UABOVE = "bottom", "top", "switch-u-below", "switch-u-above"
STATES = (BOTTOM, TOP, SW_UBELOW, SW_UABOVE)


def _side(state: str, end: str) -> str:
    if state == BOTTOM:
        return "below"
    if state == TOP:
        return "above"
    below_u = state == SW_UBELOW
    return "below" if (end == "u") == below_u else "above"


def claim1_crossings(config: Mapping[str, str]) -> int:
    """Blue-blue crossings forced by the Jordan-curve claim (I).

    A bottom (top) bundle ``e`` crosses every other bundle that attaches
    from below (above) at an end lying between the ends of ``e``.
    """
    total = 0
    for (n1, w1, a1, b1), (n2, w2, a2, b2) in itertools.combinations(BLUE, 2):
        forced = False
        for (ne, ae, be), (nf, af, bf) in (((n1, a1, b1), (n2, a2, b2)), ((n2, a2, b2), (n1, a1, b1))):
            st = config[ne]
            if st not in (BOTTOM, TOP):
                continue
            lo, hi = sorted((_RED_POS[ae], _RED_POS[be]))
            want = "below" if st == BOTTOM else "above"
            for end, vert in (("u", af), ("v", bf)):
                if lo < _RED_POS[vert] < hi and _side(config[nf], end) == want:
                    forced = True
        if forced:
            total += w1 * w2
    return total


def claim2_gray(config: Mapping[str, str], top_cost: int = 4, switch_cost: int = 3, bottom_cost: int = 0) -> int:
    cost = {BOTTOM: bottom_cost, TOP: top_cost, SW_UBELOW: switch_cost, SW_UABOVE: switch_cost}
    return sum(w * cost[config[n]] for n, w, _, _ in BLUE)


@dataclass
class Lemma3Case:
    name: str
    quote: str
    stated: tuple[int | None, int, int, int]  # (I), (II), (III), total
    configs: int = 0
    min_claim1: int | None = None
    min_claim2: int | None = None
    min_total: int | None = None

    @property
    def claim_total(self) -> int | None:
        """(I) + (II) + (III) from the per-claim minima, as the proof adds them."""
        if self.configs == 0:
            return None
        return self.min_claim1 + self.min_claim2 + self.stated[2]

    @property
    def matches(self) -> bool:
        s1, s2, s3, tot = self.stated
        return (
            self.configs > 0
            and (self.min_claim1, self.min_claim2) == (s1, s2)
            and self.claim_total == tot == s1 + s2 + s3
            and self.min_total >= tot
        )


def _case_of(config: Mapping[str, str]) -> tuple[str, int]:
    """Proof case and its claim-(III) constant."""
    w = {n: wt for n, wt, _, _ in BLUE}
    bottom = sum(w[n] for n in config if config[n] == BOTTOM)
    rest = [n for n in config if config[n] != BOTTOM]
    if bottom == 0:
        return "no-bottom", 0
    if len(rest) == 0:
        return "all-bottom", 0
    if len(rest) == 1:
        (n,) = rest
        top = config[n] == TOP
        if w[n] == 2:
            return ("w2-top", 4) if top else ("w2-switch", 2)
        return ("w1-top", 2) if top else ("w1-switch", 1)
    if bottom <= 2:
        return "bottom<=2", 1
    if bottom == 3:
        return "bottom=3", 2
    return "bottom=4", 2


LEMMA3_CASES = (
    ("no-bottom", "no blue edge is bottom, 6*3=18 by (II)", (0, 18, 0, 18)),
    ("bottom<=2", "bottom weight at most 2: 4*3=12 by (II) plus one by (III)", (0, 12, 1, 13)),
    ("bottom=3", "bottom weight 3: 2 by (I), 3*3=9 by (II), 2 by (III)", (2, 9, 2, 13)),
    ("bottom=4", "bottom weight 4: 5 by (I), 2*3=6 by (II), 2 by (III)", (5, 6, 2, 13)),
    ("all-bottom", "all bottom: 6 choose 2 minus 2 = 13 by (I)", (13, 0, 0, 13)),
    ("w2-top", "one of u4v1, u1v4 top, rest bottom: 5+2*4+4", (5, 8, 4, 17)),
    ("w2-switch", "one of u4v1, u1v4 switching, rest bottom: 5+2*3+2", (5, 6, 2, 13)),
    ("w1-top", "one of u3v2, u2v3 top, rest bottom: 8+4+2", (8, 4, 2, 14)),
    ("w1-switch", "one of u3v2, u2v3 switching, rest bottom: 10+3+1", (10, 3, 1, 14)),
)


@dataclass
class Lemma3Report:
    cases: list[Lemma3Case]
    min_a: int
    min_b: int
    configs: int
    argmin_a: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.min_a >= 13 and self.min_b >= 13 and all(c.matches for c in self.cases)

    def to_dict(self) -> dict:
        return {
            "configs": self.configs,
            "embedding_a_min": self.min_a,
            "embedding_b_min": self.min_b,
            "ok": self.ok,
            "cases": [
                {"case": c.name, "quote": c.quote, "stated": list(c.stated), "configs": c.configs,
                 "min_I": c.min_claim1, "min_II": c.min_claim2, "claim_total": c.claim_total,
                 "min_total": c.min_total,
                 "matches": c.matches}
                for c in self.cases
            ],
        }


def lemma3_case_bounds() -> Lemma3Report:
    """Enumerate all blue placements for both plane embeddings of the red-gray subgraph.

    Embedding (a): total = (I) + (II) + the proof's per-case (III) constant.
    Embedding (b): two gray crossings per unit weight of top/bottom bundles,
    three per switching unit, plus one blue-blue crossing when none switch.
    """
    cases = {name: Lemma3Case(name, quote, stated) for name, quote, stated in LEMMA3_CASES}
    names = [n for n, _, _, _ in BLUE]
    min_a, min_b, argmin = None, None, {}
    count = 0
    for states in itertools.product(STATES, repeat=len(BLUE)):
        config = dict(zip(names, states))
        count += 1
        c1, c2 = claim1_crossings(config), claim2_gray(config)
        case, c3 = _case_of(config)
        tot = c1 + c2 + c3
        cs = cases[case]
        cs.configs += 1
        cs.min_claim1 = c1 if cs.min_claim1 is None else min(cs.min_claim1, c1)
        cs.min_claim2 = c2 if cs.min_claim2 is None else min(cs.min_claim2, c2)
        cs.min_total = tot if cs.min_total is None else min(cs.min_total, tot)
        if min_a is None or tot < min_a:
            min_a, argmin = tot, dict(config)
        b = claim2_gray(config, top_cost=2, switch_cost=3, bottom_cost=2)
        if all(s in (TOP, BOTTOM) for s in states):
            b += 1
        min_b = b if min_b is None else min(min_b, b)
    return Lemma3Report(list(cases.values()), min_a, min_b, count, argmin)


# -- path catalog -------------------------------------------------------------------------

LEMMA4_PATHS: dict[str, tuple[str, ...]] = {
    "P1": ("u5", "w2^2", "v5"),
    "P2": ("u5", "w1^1", "w4^1", "w2^2", "w1^2", "w4^2", "v5"),
    "Q1": ("u5", "x1"),
    "Q1'": ("v5", "x2"),
    "Q2": ("u5", "w1^1", "x1"),
    "Q2'": ("v5", "w4^2", "x2"),
}
LEMMA3_TOP_PATHS: dict[str, tuple[str, ...]] = {
    "T1": ("u5", "w1^1", "x1"),
    "T2": ("u5", "w1^1", "w4^1", "x1"),
    "T3": ("v5", "w4^2", "x2"),
    "T4": ("v5", "w4^2", "w1^2", "x2"),
}
LEMMA3_SWITCH_PATHS: dict[str, tuple[str, ...]] = {
    "S1": ("u5", "w1^1", "x1"),
    "S2": ("u5", "w1^1", "w4^1", "x1"),
    "S3": ("u5", "w2^2", "w1^2", "x2"),
}


@dataclass(frozen=True)
class ProofPathCatalog:
    groups: tuple[tuple[str, tuple[tuple[str, tuple[str, ...]], ...]], ...]

    @classmethod
    def default(cls) -> "ProofPathCatalog":
        return cls(tuple(
            (name, tuple(paths.items()))
            for name, paths in (("lemma4", LEMMA4_PATHS), ("lemma3-top", LEMMA3_TOP_PATHS),
                                ("lemma3-switch", LEMMA3_SWITCH_PATHS))
        ))

    def replaced(self, group: str, path: str, seq: Sequence[str]) -> "ProofPathCatalog":
        out = []
        for gname, paths in self.groups:
            if gname == group:
                paths = tuple((n, tuple(seq) if n == path else p) for n, p in paths)
            out.append((gname, paths))
        return ProofPathCatalog(tuple(out))


def path_catalog_report(g13: WeightedMultigraph, catalog: ProofPathCatalog | None = None) -> dict:
    """Check every catalog entry is a path and each group is edge-disjoint.

    Disjointness is counted in parallel edges: a group may route several
    paths through one bundle as long as their number stays within its weight.
    """
    catalog = catalog or ProofPathCatalog.default()
    out: dict = {"ok": True, "groups": {}}
    for gname, paths in catalog.groups:
        use: Counter = Counter()
        problems = []
        lengths = {}
        for pname, seq in paths:
            try:
                verts = [g13.vertex(x) for x in seq]
            except KeyError as exc:
                problems.append(f"{pname}: {exc}")
                continue
            if len(set(verts)) != len(verts):
                problems.append(f"{pname} repeats a vertex")
            for a, b in zip(verts, verts[1:]):
                e = g13.edge_between(a, b)
                if e is None:
                    problems.append(f"{pname}: no edge {g13.label(a)}-{g13.label(b)}")
                else:
                    use[e.id] += 1
            lengths[pname] = len(seq) - 1
        for eid, k in use.items():
            if k > g13.edge(eid).weight:
                problems.append(f"bundle {g13.edge_label(eid)} used {k} times but has weight {g13.edge(eid).weight}")
        out["groups"][gname] = {"ok": not problems, "problems": problems, "lengths": lengths}
        out["ok"] = out["ok"] and not problems
    return out


def verify_path_catalog(g13: WeightedMultigraph, catalog: ProofPathCatalog | None = None) -> bool:
    return bool(path_catalog_report(g13, catalog)["ok"])
