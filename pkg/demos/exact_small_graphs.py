"""
Exact crossing numbers of small graphs
======================================

The branch-and-bound solver settles the classical small cases and returns
a witness drawing for each.  Weights behave like bundles of parallel edges.
"""

import networkx as nx

from crossingcrit import GraphBuilder, SolverBudget, build_k33, build_kochol, exact_cr, skewness_lb


def from_nx(h, weight=1):
    b = GraphBuilder()
    ids = {v: b.add_vertex(str(v)) for v in h.nodes}
    for u, v in h.edges:
        b.add_edge(ids[u], ids[v], weight)
    return b.build()


cases = {
    "K5": from_nx(nx.complete_graph(5)),
    "K3,3": build_k33(),
    "K6": from_nx(nx.complete_graph(6)),
    "Petersen": from_nx(nx.petersen_graph()),
    "K4,4": from_nx(nx.complete_bipartite_graph(4, 4)),
    "K5, every edge doubled": from_nx(nx.complete_graph(5), 2),
    "Kochol, 4 tiles": build_kochol(4),
}

budget = SolverBudget(time_limit=60)
for name, g in cases.items():
    r = exact_cr(g, budget)
    print(f"{name:24s} cr = {r.value}  (skewness {skewness_lb(g)}, search nodes {r.stats['nodes']})")

# A time-limited run on K7 only returns bounds.
r = exact_cr(from_nx(nx.complete_graph(7)), SolverBudget(time_limit=5))
print("K7 after 5 s:", r.status.value, r.lower_bound, "<= cr <=", r.upper_bound)
