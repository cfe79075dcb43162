"""
The families Gamma(k) and the Moebius function
==============================================

Gamma(k) holds the subsets of [0, k] that contain both endpoints and have
gcd 1.  Their signed count equals mu(k), and the matching explains why: at
most one face survives.
"""

from vdw.gamma import gamma, match_gamma, mobius_via_gamma, verify_gamma_matching
from vdw.numtheory import mobius

for k in (4, 6, 12, 15):
    m = match_gamma(k)
    print(f"Gamma({k}): {len(gamma(k))} faces, {len(m.pairs)} pairs, critical {m.critical}")

# Above k = 28 the signed count comes from the matching instead of a scan.
for k in (30, 105, 199, 200):
    print(f"k = {k}: mu = {mobius(k)}, signed count = {mobius_via_gamma(k)}")

# Large k are verified one slice at a time.
v = verify_gamma_matching(60)
print("Gamma(60) verified:", v.ok, "slices:", v.slices_checked, "critical:", v.critical_count)
