"""
Critical graphs with many vertex degrees
========================================

Build the degree-rich construction for a few parameter choices and print
its degree profile together with an upper-bound drawing.
"""

from crossingcrit.verify import verify_theorem3

for q, d, c in [(1, 8, 13), (2, 10, 13), (1, 12, 15)]:
    rep = verify_theorem3(q, d, c)
    prof = rep["degree_profile"]
    print(f"q={q} d={d} c={c}: {rep['vertices']} vertices, {rep['bundles']} bundles")
    print("   degrees 3..d:", [prof.get(str(x), 0) for x in range(3, d + 1)])
    print("   upper bound drawing:", rep["upper_bound"]["count"], "crossings; all checks", rep["ok"])
