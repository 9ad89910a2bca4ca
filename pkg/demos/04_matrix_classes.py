"""
Which matrices map f into c?
============================

Each matrix class is characterised by a short list of limit conditions.
On a finite window they become three-valued evidence.
"""

from fracsum import SpacePair, classify
from fracsum.operators import cesaro, euler, identity

cases = [
    ("Cesaro", cesaro(), SpacePair("f", "c")),
    ("identity", identity(), SpacePair("f", "c")),
    ("identity", identity(), SpacePair("f", "f")),
    ("Euler r=1/2", euler(0.5), SpacePair("c", "f")),
    ("Cesaro", cesaro(), SpacePair("f", "bs")),
]
for label, matrix, pair in cases:
    rep = classify(matrix, pair)
    detail = ", ".join(f"{cid} {r.verdict.value}" for cid, r in rep.conditions.results.items())
    print(f"{label:>12} in ({pair.source}:{pair.target}): {rep.verdict.value}")
    print(f"{'':>14}{detail}")

# The identity fails (f:c) because sum_k |Delta(a_nk - alpha_k)| stays at 2:
# it keeps the oscillation of the input instead of averaging it away.
