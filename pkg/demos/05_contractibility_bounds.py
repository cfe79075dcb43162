"""
When is vdW(n, k) contractible?
===============================

For a > 1 let L be lcm(1, ..., a) and M the largest p^(e-1) over the prime
powers p^e in L.  Once k reaches L/M, every vdW(n, k) with k < n <= (a+1)k is
contractible.
"""

from vdw.numtheory import asymptotic_ratio, bound_certificate, contractible_by_theorem, r_of_k

for a in range(2, 9):
    c = bound_certificate(a)
    print(f"a = {a}: L = {c.L:4d}, M = {c.M}, threshold k >= {c.threshold}")

for n, k in [(30, 6), (35, 7), (25, 5), (60, 12)]:
    print(f"vdW({n}, {k}) witness:", contractible_by_theorem(n, k))

# The dimension bound r(k) grows like log k / log log k.  The ratio below
# drifts slowly and is shown only as a curiosity.
for k in (10, 10**3, 10**6, 10**9):
    print(f"k = {k:>10}: r(k) = {r_of_k(k)}, ratio = {asymptotic_ratio(k):.3f}")
