"""
Popular prime distances among differences of powers of two
==========================================================
"""
import math

from deltasets import FiniteSet, first_primes, khintchine_scan, terms_up_to

n = 2000
A = FiniteSet(first_primes(n).tolist())
B = terms_up_to("pow2", A.max)

grid = [100, 1000, 5000, A.max]
for row in khintchine_scan(A, B, grid):
    print(f"n={row.n:6d}  x={row.x:5d}  count={row.count:4d}  density={float(row.density):.4f}"
          f"  (A(n)/n)^2={float(row.reference):.4f}")

target = math.ceil(n / math.log(n) * 0.5)
print("\nneeded at p_n:", target)
