"""
The lower-bound case analysis
=============================

The lower bound for the base graph rests on a finite case analysis.  These
are the parts that can be executed: the two plane embeddings of the red and
gray subgraph, the blue-placement bounds, the 20-row case table and the
edge-disjoint path catalog.
"""

from crossingcrit import build_g13
from crossingcrit.planarity import embedding_class_report
from crossingcrit.proofcheck import enumerate_table1, format_table, in_canonical_order, lemma3_case_bounds
from crossingcrit.verify import base_subgraph, verify_g13_lowerbound_pipeline

g0 = base_subgraph(build_g13())
print("embedding classes under each equivalence:")
for k, v in embedding_class_report(g0)["classes"].items():
    print(f"  {k:34s} {v}")

rep = lemma3_case_bounds()
print("\nminimum blue-placement cost:", rep.min_a, "and", rep.min_b)
for c in rep.cases:
    print(f"  {c.name:11s} stated {c.stated[3]:2d}  computed {c.claim_total}")

print()
print(format_table(in_canonical_order(enumerate_table1())))

pipeline = verify_g13_lowerbound_pipeline()
print("\npipeline:", [(s["stage"], s["ok"]) for s in pipeline["stages"]])
