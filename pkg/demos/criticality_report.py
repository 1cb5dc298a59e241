"""
Checking criticality of a family member
=======================================

Every bundle of a family member is deleted in turn; the harness looks for a
drawing of the rest with fewer than 13 crossings.  The lower bound is not
recomputed, only attributed to the case analysis.
"""

import json
import sys

from crossingcrit import FamilyParams
from crossingcrit.verify import verify_criticality

params = FamilyParams.parse(sys.argv[1] if len(sys.argv) > 1 else "1,1/2,1/2,1")
rep = verify_criticality(params, 13)
print("params", params, "verdict:", rep.verdict)
for w in rep.per_edge.values():
    print(f"  {w.label:12s} weight {w.weight}  {w.count:2d} crossings via {w.method}")
print(json.dumps(rep.to_dict(drawings=False)["flags"], indent=1))
