"""
Discrete Morse matchings
========================

A Morse matching pairs faces with cofaces one dimension up.  If no closed
path alternates along the pairs, the complex collapses onto a CW complex
with one cell for each unmatched face.
"""

from vdw.morse import (
    build_contractible_matching,
    build_example_matching,
    build_theorem_main_matching,
    dump_matching,
)

# The hand-built matching on vdW(10, 2) leaves the vertex {10} and seven edges
# {x, x+3}.  Together with acyclicity this proves the complex is a wedge of
# seven circles.
rep = build_example_matching(10, 2)
print("critical cells:", rep.critical)
print("summary:", rep.homotopy_summary)

# The general construction works for every (n, k) and keeps critical cells
# in low dimensions, but it is not perfect.
rep = build_theorem_main_matching(15, 3)
print("vdW(15, 3) Morse vector:", rep.morse_vector.as_list())

# For k at least L(a)/M(a), one toggle per fiber leaves a single vertex.
rep = build_contractible_matching(30, 6, a=4)
print("vdW(30, 6):", rep.homotopy_summary, rep.critical)

# Matchings serialize to tab-separated pairs followed by the critical cells,
# the format `vdw verify` reads back.
text = dump_matching(rep.matching, rep.critical)
print("\n".join(text.splitlines()[-3:]))
