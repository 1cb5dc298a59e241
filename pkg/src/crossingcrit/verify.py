"""Verification harness: upper-bound certificates, per-bundle witnesses and proof fragments.

Evidence is kept in three separate kinds so that no report claims more than
was computed:

* ``certificate``: a realizable drawing, hence an upper bound on cr;
* ``search``: witness drawings of ``G - e`` found by templates or search;
* ``proof``: the executable fragments of the lower-bound argument
  (embedding enumeration, case tables, path catalog).

No lower bound on cr(G) is ever derived from search here.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import proofcheck
from .drawing import (
    CrossingPoint,
    Drawing,
    canonical_drawing,
    canonical_family_drawing,
    is_certificate,
    is_good_drawing,
    realize,
    witness_drawing_template,
)
from .families import FamilyParams, build_g13, build_g13_family, theorem3_build
from .graphcore import EdgeColor, WeightedMultigraph, degree_profile, delete_edge
from .planarity import embedding_class_report, enumerate_small_embeddings
from .solver import SolverBudget, improve_below

log = logging.getLogger(__name__)

VERDICT_OK = "criticality-verified-at-desk-scale"
VERDICT_FAIL = "not-verified"


def _params(p: FamilyParams | Sequence[int] | str) -> FamilyParams:
    if isinstance(p, FamilyParams):
        return p
    if isinstance(p, str):
        return FamilyParams.parse(p)
    return FamilyParams(tuple(p))


def base_subgraph(g: WeightedMultigraph) -> WeightedMultigraph:
    """The red and gray bundles of a family member (everything but blue and green)."""
    keep = [e.id for e in g.edges if e.color in (EdgeColor.RED, EdgeColor.GRAY)]
    return g.edge_subgraph(keep)


# -- upper bound ---------------------------------------------------------------------------


def verify_upper(params: FamilyParams | Sequence[int] | str) -> tuple[bool, Drawing]:
    """Check the canonical drawing is realizable, good and has exactly 13 crossings."""
    d = canonical_family_drawing(_params(params))
    ok = d.count == 13 and is_good_drawing(d).good and realize(d).is_planar
    return ok, d


# -- criticality ---------------------------------------------------------------------------


@dataclass
class EdgeWitness:
    edge: int
    label: str
    weight: int
    color: str
    witness: Drawing | None
    count: int | None
    method: str | None

    @property
    def ok(self) -> bool:
        return self.witness is not None

    def to_dict(self, drawings: bool = True) -> dict:
        out = {
            "edge": self.edge,
            "label": self.label,
            "weight": self.weight,
            "color": self.color,
            "status": "witness" if self.ok else "failure",
            "count": self.count,
            "method": self.method,
        }
        if drawings:
            out["witness"] = self.witness.to_dict() if self.witness else None
        return out


@dataclass
class CriticalityReport:
    params: FamilyParams
    c: int
    upper_bound_certificate: Drawing
    per_edge: dict[int, EdgeWitness]
    weight_decrements: dict[int, EdgeWitness]
    lower_bound_evidence: dict
    preconditions_ok: bool
    flags: dict = field(default_factory=dict)

    @property
    def upper_ok(self) -> bool:
        d = self.upper_bound_certificate
        return d.count == self.c and is_certificate(d)

    @property
    def all_witnessed(self) -> bool:
        return all(w.ok and w.count < self.c for w in self.per_edge.values())

    @property
    def decrements_witnessed(self) -> bool:
        return all(w.ok and w.count < self.c for w in self.weight_decrements.values())

    @property
    def verdict(self) -> str:
        good = (self.preconditions_ok and self.upper_ok and self.all_witnessed
                and self.decrements_witnessed and self.lower_bound_evidence.get("ok", False))
        return VERDICT_OK if good else VERDICT_FAIL

    def failures(self) -> list[str]:
        bad = [w.label for w in self.per_edge.values() if not w.ok]
        bad += [f"{w.label} (weight {w.weight})" for w in self.weight_decrements.values() if not w.ok]
        return bad

    def to_dict(self, drawings: bool = True) -> dict:
        return {
            "params": self.params.to_dict(),
            "c": self.c,
            "claims": {
                "upper": f"cr(G) <= {self.upper_bound_certificate.count} (certificate)",
                "per_edge": f"cr(G - e) < {self.c} for every witnessed bundle (search)",
                "lower": "attributed to the proof fragments below; not recomputed",
            },
            "upper_bound_certificate": {
                "count": self.upper_bound_certificate.count,
                "certificate": is_certificate(self.upper_bound_certificate),
                "drawing": self.upper_bound_certificate.to_dict() if drawings else None,
            },
            "per_edge": [w.to_dict(drawings) for _, w in sorted(self.per_edge.items())],
            "weight_decrements": [w.to_dict(drawings) for _, w in sorted(self.weight_decrements.items())],
            "lower_bound_evidence": self.lower_bound_evidence,
            "flags": {
                "preconditions_ok": self.preconditions_ok,
                "upper_ok": self.upper_ok,
                "all_witnessed": self.all_witnessed,
                "decrements_witnessed": self.decrements_witnessed,
                **self.flags,
            },
            "verdict": self.verdict,
        }


def _witness_job(args: tuple) -> tuple[int, Drawing | None]:
    g, eid, c, budget, params, decrement, exact = args
    e = g.edge(eid)
    if decrement:
        h = g.with_weight(eid, e.weight - 1)
        template = None
    else:
        h = delete_edge(g, eid)
        template = (lambda: witness_drawing_template(params, eid)) if params is not None else None
    d = improve_below(h, c, budget, template=template, exact_fallback=exact)
    if d is not None and d.meta.get("method") is None:
        d.meta["method"] = "heuristic"
    return eid, d


def _run_jobs(jobs: list[tuple], workers: int) -> dict[int, Drawing | None]:
    if workers <= 1 or len(jobs) <= 1:
        return dict(_witness_job(j) for j in jobs)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return dict(pool.map(_witness_job, jobs))


def _as_witness(g: WeightedMultigraph, eid: int, d: Drawing | None) -> EdgeWitness:
    e = g.edge(eid)
    return EdgeWitness(
        eid, g.edge_label(eid), e.weight, e.color.value, d,
        d.count if d is not None else None,
        d.meta.get("method") if d is not None else None,
    )


def verify_criticality(
    params: FamilyParams | Sequence[int] | str,
    c: int = 13,
    budget: SolverBudget | None = None,
    decrements: bool = True,
    jobs: int = 1,
    exact_fallback: bool = False,
) -> CriticalityReport:
    """Upper certificate plus, for each bundle e, a drawing of G - e with fewer than c crossings.

    With ``decrements`` every bundle of weight > 1 is also checked with its
    weight lowered by one (deleting a single parallel edge).  Failures are
    recorded, never raised.
    """
    params = _params(params)
    budget = budget or SolverBudget()
    g = build_g13_family(params)
    ok_upper, upper = verify_upper(params)
    jobs_list = [(g, e.id, c, budget, params, False, exact_fallback) for e in g.edges]
    found = _run_jobs(jobs_list, jobs)
    per_edge = {eid: _as_witness(g, eid, d) for eid, d in sorted(found.items())}
    dec: dict[int, EdgeWitness] = {}
    if decrements:
        jobs_list = [(g, e.id, c, budget, None, True, exact_fallback) for e in g.edges if e.weight > 1]
        for eid, d in sorted(_run_jobs(jobs_list, jobs).items()):
            w = _as_witness(g, eid, d)
            w.label = f"{w.label} weight {w.weight}->{w.weight - 1}"
            dec[eid] = w
    evidence = verify_g13_lowerbound_pipeline()
    evidence_ref = {
        "ok": evidence["ok"],
        "source": "verify_g13_lowerbound_pipeline",
        "stages": {s["stage"]: s["ok"] for s in evidence["stages"]},
    }
    return CriticalityReport(
        params, c, upper, per_edge, dec, evidence_ref, params.criticality_ok,
        {"canonical_good_realizable": ok_upper, "bundles": g.n_edges},
    )


# -- theorem 3 -----------------------------------------------------------------------------


def theorem3_certificate(g: WeightedMultigraph) -> Drawing:
    """Canonical crossings plus one crossing inside every zipped K3,3 copy."""
    base = canonical_drawing(g)
    crossings = list(base.crossings)
    orders = dict(base.orders)
    prefixes = sorted({g.label(v).split(":")[0] for v in g.vertices if ":" in g.label(v)},
                      key=lambda p: int(p[1:]))
    nid = max((x.id for x in crossings), default=-1) + 1
    for i, p in enumerate(prefixes):
        later = [v for v in g.vertices if g.label(v).split(":")[0] in prefixes[i + 1:]]
        keep = g.without_vertices(later)
        inner = [e for e in g.edges
                 if g.label(e.u).startswith(p + ":") and g.label(e.v).startswith(p + ":")]
        for a, b in itertools.combinations(inner, 2):
            if a.touches(b):
                continue
            cand = Drawing(g, tuple(crossings + [CrossingPoint(nid, a.id, b.id)]),
                           {**orders, a.id: (nid,), b.id: (nid,)})
            if realize(cand.restricted(keep)).is_planar:
                crossings.append(CrossingPoint(nid, a.id, b.id))
                orders[a.id], orders[b.id] = (nid,), (nid,)
                nid += 1
                break
    return Drawing(g, tuple(crossings), orders, {"method": "template", "template": "theorem3"})


def verify_theorem3(q: int, d: int, c: int) -> dict:
    """Degree profile, transform degrees and an upper-bound drawing with at most c crossings."""
    t = theorem3_build(q, d, c)
    g = t.graph
    prof = degree_profile(g)
    missing = {deg: prof.get(deg, 0) for deg in range(3, d + 1) if prof.get(deg, 0) < q}
    transforms = []
    for m in t.manifest:
        if "lemma" not in m:
            continue
        actual = g.degree(g.vertex(m["vertex"]))
        transforms.append({**m, "actual": actual, "ok": actual == m["degree"]})
    cert = theorem3_certificate(g)
    cert_ok = is_certificate(cert) and cert.count <= c
    return {
        "q": q,
        "d": d,
        "c": c,
        "effective_d": t.effective_d,
        "params": t.params.to_dict(),
        "vertices": g.n_vertices,
        "bundles": g.n_edges,
        "degree_profile": {str(k): v for k, v in sorted(prof.items())},
        "missing_degrees": missing,
        "profile_ok": not missing,
        "transforms": transforms,
        "transforms_ok": all(x["ok"] for x in transforms),
        "zips": [m for m in t.manifest if m.get("op") == "zip_k33"],
        "upper_bound": {"count": cert.count, "certificate": is_certificate(cert), "ok": cert_ok},
        "ok": not missing and all(x["ok"] for x in transforms) and cert_ok,
    }


# -- lower-bound proof fragments -----------------------------------------------------------


def verify_g13_lowerbound_pipeline(g13: WeightedMultigraph | None = None) -> dict:
    """Run the machine-checkable fragments of the lower-bound proof, in order.

    The redrawing arguments of the proof are cited, not checked; a passing
    pipeline shows only that the enumerated parts hold.
    """
    g13 = g13 if g13 is not None else build_g13()
    stages = []

    g0 = base_subgraph(g13)
    try:
        classes = len(enumerate_small_embeddings(g0))
        detail = embedding_class_report(g0)
    except Exception as exc:  # recorded, the remaining stages still run
        classes, detail = None, {"error": str(exc)}
    stages.append({"stage": "embeddings", "ok": classes == 2, "classes": classes, "detail": detail})

    l3 = proofcheck.lemma3_case_bounds()
    stages.append({"stage": "lemma3", "ok": l3.ok, "min_a": l3.min_a, "min_b": l3.min_b})

    rows = proofcheck.enumerate_table1()
    match, diffs = proofcheck.table1_matches_golden(rows)
    low = min(r.total for r in rows)
    stages.append({"stage": "table1", "ok": match and low == 12, "rows": len(rows),
                   "min_total": low, "diffs": diffs})

    cat = proofcheck.path_catalog_report(g13)
    stages.append({"stage": "path_catalog", "ok": cat["ok"], "detail": cat})

    return {
        "ok": all(s["ok"] for s in stages),
        "stages": stages,
        "scope": ("executable fragments of the lower-bound proof: embedding enumeration, "
                  "case bounds, case table and path catalog; the redrawing steps are cited "
                  "but not machine-checked"),
    }

