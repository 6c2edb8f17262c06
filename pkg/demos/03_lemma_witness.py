"""
Witnessing a popular distance
=============================

For A = floor(n log(n + 2)) and B = floor(10^sqrt(n)), find x in Delta(B)
with many pairs of A at distance x, and compare with the guaranteed count.
"""
from deltasets import generate, lemma_witnesses, terms_up_to

A = generate("floor(n*log(n+2))", 5000).set
B = terms_up_to("floor-exp10-alpha(0.5)", A.span)
print("N =", len(A), " a_N =", A.max, " nu =", len(B), " b_nu =", B.max)

hs = [1, 2, 4, 8]
for h, r in zip(hs, lemma_witnesses(A, B, hs)):
    print(f"h={h}: x={r.x}  |A & (A+x)|={r.multiplicity}  bound={float(r.bound):9.2f}  met={r.bound_met}")
    print("      from", r.provenance[:2], " sample pairs", r.pairs[:3])

# the bound goes negative quickly; the witness count does not
