"""
Integral homology of vdW(5k, k)
===============================

The oracle computes reduced homology over the integers from sparse boundary
matrices.  For the diagonal family vdW(5k, k) the answer is always a wedge
of spheres of a single dimension.
"""

from vdw import enumerate_faces, reduced_homology, wedge_signature

for k in range(1, 6):
    fs = enumerate_faces(5 * k, k)
    br = reduced_homology(fs, torsion=True)
    dim, count = wedge_signature(br)
    print(f"vdW({5 * k:2d}, {k}): {len(fs):5d} faces, wedge of {count} spheres of dimension {dim}")

# A complex with torsion looks different: the six-vertex projective plane.
from vdw import FaceSet

rp2 = FaceSet.from_facets([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                           (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)])
br = reduced_homology(rp2)
print("RP^2 torsion:", dict(br.torsion), "wedge signature:", wedge_signature(br))
