"""
Even and odd powers of two
==========================

A = sums of distinct even powers of 2, B = sums of distinct odd powers.
The two sets are about as dense as their sizes allow, yet they share no
distance at all.
"""
from fractions import Fraction

import numpy as np

from deltasets import find_pigeonhole_prefix, generate

N = 1024
A = generate("even-pow2-sums", N).set
B = generate("odd-pow2-sums", N).set
print("A starts", A[:8], " B starts", B[:8])
print("b_n = 2 a_n for all n:", np.array_equal(B.elements, 2 * A.elements))

common = np.intersect1d(A.histogram().xs, B.histogram().xs)
print("common distances:", common.size)

# (a_n + b_n)/n^2 hits (2^k + 1)/(2^k - 1) at n = 2^k - 1, so its liminf is 1
for k in range(2, 11):
    n = 2**k - 1
    r = Fraction(A.term(n) + B.term(n), n * n)
    print(f"k={k:2d}  n={n:4d}  ratio={float(r):.6f}")

# never a_N + b_nu <= N nu, which would have forced a shared distance
print("crowded prefix:", find_pigeonhole_prefix(A, B))
