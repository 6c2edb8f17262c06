"""
Growth conditions on finite prefixes
====================================

Ratio series with trailing inf/sup windows.  These numbers describe
prefixes only and never prove a limit statement.
"""
from deltasets import FiniteSet, first_primes, generate, ratio_series, theorem_condition_check
from deltasets.diagnostics import power_constant_check

P = FiniteSet(first_primes(20000).tolist())
B = generate("pow2", 40).set

s = ratio_series(P, None, "a-over-ntheta", theta="log(n)")
print(s.to_csv()[-200:])
print("p_n/(n log n): trailing inf", round(s.liminf_estimate, 4), "sup", round(s.limsup_estimate, 4))

v = theorem_condition_check(P, B, "C3.4", theta="log(n)")
print("\nprimes vs powers of 2:", v.value, "<", v.threshold, "->", v.satisfied_empirically)
print(v.caveat)

A = generate("even-pow2-sums", 1024).set
v = theorem_condition_check(A, generate("odd-pow2-sums", 1024).set, "T2.3")
print("\nEven/odd power sums: trailing liminf of (a_n+b_n)/n^2 =", round(v.value, 4))

I = FiniteSet(range(1, 10001))
print("\nidentity, a_{b_n}/(n b_n):", ratio_series(I, I, "a-of-b", grid=[10, 100, 1000]).points)

for args in [(1, 0.5, 0.1, 2), (1, 0.5, 0.2, 2), (0.4, 1, 0.4, 1), (1, 0.5, 1, 3)]:
    pv = power_constant_check(*args)
    print("K, alpha, M, beta =", args, "->", pv.case, pv.satisfied, pv.conclusion)
