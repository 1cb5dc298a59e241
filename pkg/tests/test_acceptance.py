"""Acceptance criteria, one pass/fail line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE, complete, petersen  # noqa: E402

from crossingcrit import (  # noqa: E402
    EdgeColor,
    FamilyParams,
    SolverBudget,
    Status,
    build_g13,
    build_g13_family,
    build_k33,
    build_kochol,
    canonical_family_drawing,
    enumerate_small_embeddings,
    exact_cr,
    is_certificate,
    is_good_drawing,
    realize,
)
from crossingcrit.cli import main as cli_main  # noqa: E402
from crossingcrit.proofcheck import GOLDEN_TABLE1, enumerate_table1, lemma3_case_bounds, table1_matches_golden  # noqa: E402
from crossingcrit.verify import base_subgraph, verify_criticality, verify_theorem3  # noqa: E402


def report(n: int, ok: bool, what: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {what}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def test_criterion_1_case_table():
    t = time.monotonic()
    code = cli_main(["table1", "--golden", "--out", str(Path("/dev/null"))])
    rows = enumerate_table1()
    ok, diffs = table1_matches_golden(rows)
    dt = time.monotonic() - t
    low = min(r.total for r in rows)
    good = code == 0 and ok and len(rows) == 20 == len(GOLDEN_TABLE1) and low == 12 and dt < 1.0
    report(1, good, f"20 rows match golden exactly (exit {code}, diffs {len(diffs)}), min total {low}, {dt:.2f}s < 1s")


def test_criterion_2_canonical_certificate():
    t = time.monotonic()
    d = canonical_family_drawing(FamilyParams((2, 2)))
    realizable = realize(d).is_planar
    good = is_good_drawing(d).good
    g = d.graph
    blue_only = all(g.edge(c.a).color == EdgeColor.BLUE and g.edge(c.b).color == EdgeColor.BLUE
                    for c in d.crossings)
    dt = time.monotonic() - t
    report(2, realizable and good and blue_only and d.count == 13 and dt < 1.0,
           f"realizable={realizable} good={good} blue-only={blue_only} count={d.count} (need 13), {dt:.2f}s < 1s")


def test_criterion_3_embedding_classes():
    t = time.monotonic()
    classes = enumerate_small_embeddings(base_subgraph(build_g13()))
    dt = time.monotonic() - t
    report(3, len(classes) == 2 and dt < 60,
           f"{len(classes)} classes up to label-preserving automorphism and reflection (need 2), {dt:.2f}s < 60s")


def test_criterion_4_case_bounds():
    rep = lemma3_case_bounds()
    stated = [c for c in rep.cases if c.stated]
    mismatched = [c.name for c in stated if not c.matches]
    totals = sorted(c.stated[3] for c in stated)
    computed = sorted(c.claim_total for c in stated)
    ok = (rep.min_a >= 13 and rep.min_b >= 13 and not mismatched and computed == totals
          and {13, 14, 17, 18} <= set(totals))
    report(4, ok, f"min {rep.min_a} / {rep.min_b} (need >= 13 both), per-case totals {computed} "
                  f"equal stated {totals} (mismatches: {mismatched or 'none'})")


def test_criterion_5_criticality():
    lines = []
    ok = True
    total = 0.0
    for doubled in [(2, 2), (1, 1, 2), (2, 1, 1, 2)]:
        t = time.monotonic()
        rep = verify_criticality(doubled, 13, decrements=True)
        dt = time.monotonic() - t
        total += dt
        n_bundles = build_g13_family(doubled).n_edges
        witnessed = [w for w in rep.per_edge.values()
                     if w.ok and w.count <= 12 and is_certificate(w.witness)]
        this = len(witnessed) == n_bundles == len(rep.per_edge) and dt < 600
        ok &= this
        lines.append(f"{list(doubled)}: {len(witnessed)}/{n_bundles} bundles <= 12, "
                     f"decrements {sum(w.ok for w in rep.weight_decrements.values())}/{len(rep.weight_decrements)}, "
                     f"{dt:.1f}s")
    report(5, ok and total < 600, "; ".join(lines) + f"; total {total:.1f}s < 600s")


def test_criterion_6_solver_calibration():
    cases = [
        ("K5", complete(5), 1),
        ("K3,3", build_k33(), 1),
        ("K6", complete(6), 3),
        ("Petersen", petersen(), 2),
        ("Kochol (smallest member, 4 tiles)", build_kochol(4), 2),
        ("weight-2 K5", complete(5, 2), 4),
    ]
    t = time.monotonic()
    parts, ok = [], True
    for name, g, want in cases:
        r = exact_cr(g, SolverBudget(time_limit=120))
        this = (r.status == Status.EXACT and r.value == want and r.lower_bound == want
                and r.witness.count == want and is_certificate(r.witness))
        ok &= this
        parts.append(f"{name}={r.value}{'' if this else f' (want {want})'}")
    dt = time.monotonic() - t
    report(6, ok and dt < 300, ", ".join(parts) + f"; witnesses certified, bounds exhausted, {dt:.1f}s < 300s")


def test_criterion_7_degree_profiles():
    t = time.monotonic()
    bad = []
    for q, d, c in itertools.product((1, 2, 3), range(8, 17), (13, 14, 15)):
        rep = verify_theorem3(q, d, c)
        if not (rep["profile_ok"] and rep["transforms_ok"]):
            bad.append((q, d, c))
    dt = time.monotonic() - t
    report(7, not bad and dt < 60, f"81 (q,d,c) cases, degree profile and transform degrees exact, "
                                   f"failures {bad or 'none'}, {dt:.1f}s < 60s")


def test_criterion_8_invariants():
    import test_properties as tp

    names = ["test_weight_scaling_is_quadratic", "test_subdivision_invariance",
             "test_monotone_under_edge_deletion", "test_isomorphism_invariance"]
    for n in names:
        if tp.EXAMPLES.get(n, 0) < 100:  # not yet run in this session
            getattr(tp, n)()
    counts = {n: tp.EXAMPLES.get(n, 0) for n in names}
    report(8, all(v >= 100 for v in counts.values()),
           "randomised instances per property: " + ", ".join(f"{n[5:]}={v}" for n, v in counts.items()))


def _param_grid():
    for m in range(1, 6):
        for ds in itertools.product(range(1, 5), repeat=m):
            if sum(ds) % 2 == 0:
                yield ds


def test_criterion_9_vertex_count():
    bad = []
    n = 0
    for ds in _param_grid():
        p = FamilyParams(ds)
        n += 1
        if build_g13_family(p).n_vertices != 3 * p.k + p.m + 9:
            bad.append(ds)
    anchors = (build_g13().n_vertices, build_g13_family((2, 2)).n_vertices, build_g13_family((1, 1, 2)).n_vertices)
    report(9, not bad and anchors == (17, 17, 18),
           f"|V| = 3k+m+9 on {n} parameter tuples (m <= 5, 2k_i <= 4), anchors {anchors}, failures {len(bad)}")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
