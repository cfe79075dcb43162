"""
Building van der Waerden complexes
==================================

The complex vdW(n, k) lives on the vertices 1..n.  A set of vertices is a
face when it fits inside some arithmetic progression with k + 1 terms that
stays within [1, n].
"""

from vdw import enumerate_faces, facets, is_face, step_set

# The facets are the progressions themselves.  vdW(10, 2) has twenty of them.
fs = enumerate_faces(10, 2)
print("facets of vdW(10, 2):", len(facets(10, 2)))
print("faces by dimension:", fs.counts())

# Membership can be decided without building anything.  {1, 4, 7} is a
# progression with three terms, so it is a face for k = 2 but not for k = 3,
# where a progression through 1 and 7 with four terms would need step 2.
print("{1,4,7} in vdW(7,2):", is_face((1, 4, 7), 7, 2))
print("{1,4,7} in vdW(7,3):", is_face((1, 4, 7), 7, 3))

# The steps of the facets through an edge decide how faces near it behave.
print("steps through {1, 7} in vdW(7, 3):", step_set(7, 3, 1, 7))
