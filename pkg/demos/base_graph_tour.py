"""
The 17-vertex base graph and its 13-crossing drawing
====================================================

Build the base graph, look at its bundles, draw it with the canonical
13-crossing drawing, and check that every bundle deletion lets the
crossing count drop to 12.
"""

from collections import Counter

from crossingcrit import build_g13, canonical_drawing, is_certificate, planarize_heuristic
from crossingcrit.graphcore import delete_edge

g = build_g13()
print(g)
print("bundles by colour:", dict(Counter(e.color.value for e in g.edges)))
print("total weight (parallel edges):", g.total_weight)

# The blue bundles are the only ones that cross in the canonical drawing.
d = canonical_drawing(g)
print("canonical drawing:", d.count, "crossings, certificate:", is_certificate(d))
for c in d.crossings:
    print("  ", g.edge_label(c.a), "x", g.edge_label(c.b))

# Delete each bundle in turn and search for a drawing with at most 12 crossings.
for e in g.edges:
    w, _ = planarize_heuristic(delete_edge(g, e.id), target=12)
    print(f"G - {g.edge_label(e.id):10s} weight {e.weight}: {w.count:2d} crossings")
