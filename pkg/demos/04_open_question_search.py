"""Random search for nonlinear cone pairs meeting every hypothesis of the
conical Solmon inequality.

In the plane the search should come back empty.  In higher dimensions an
empty result is only evidence; nothing here settles whether such pairs exist.
"""

import sys
import time

from coneangles.theorems import explore_open_question

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
for dim in (2, 3, 4):
    t = time.perf_counter()
    out = explore_open_question(dim, trials, seed=1)
    print(f"dim {dim}: {out['hits']} hits in {trials} trials ({time.perf_counter() - t:.1f} s)")
    for hit in out["sample_hits"]:
        print("  trial", hit["trial"], hit["K1"], hit["K2"])
print(out["note"])
