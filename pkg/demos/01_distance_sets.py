"""
Distance sets and multiplicities
================================

A first look at Delta(A) and the multiplicity c(x) = |A & (A + x)|.
"""
import numpy as np

from deltasets import FiniteSet, delta_set, generate, recursion_set

A = FiniteSet([1, 2, 3, 5])
print("A =", A.tolist())
print("Delta(A) =", delta_set(A).tolist())
print("multiplicities:", A.histogram().as_dict())

# every pair of elements contributes exactly once
n = len(A)
print("pairs:", A.histogram().total_pairs, "=", n * (n - 1) // 2)

# the primes below 10^4: which small distances occur at least 50 times?
P = generate("primes", 1229).set
h = P.histogram()
print("\nprimes up to", P.max)
print("R_50 up to 30:", recursion_set(P, 50, 30))

# gaps of multiples of 6 are the most frequent
top = np.argsort(-h.counts[:60], kind="stable")[:6]
for j in top:
    print(f"  x = {h.xs[j]:3d}   c(x) = {h.counts[j]}")

# the two backends agree; auto picks the cheaper one
naive = P.histogram("naive")
bits = P.histogram("bitparallel")
print("\nbackends agree:", naive == bits)
