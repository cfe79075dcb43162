"""Reduced simplicial homology over the integers.

Boundary matrices are stored column-sparse.  Ranks and invariant factors
come from :func:`_eliminate`: pivots of absolute value one are cleared
first, which is exact over ZZ and disposes of almost everything for
simplicial boundaries; whatever survives is handed to a dense Smith normal
form (or a fraction-free rank computation when torsion is not wanted).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complex import Face, FaceSet, euler_characteristic

__all__ = [
    "BoundaryMatrix",
    "BettiReport",
    "boundary_matrix",
    "smith_normal_form",
    "integer_rank",
    "reduced_homology",
    "wedge_signature",
]


@dataclass(frozen=True)
class BoundaryMatrix:
    """``d_dim``: columns are ``dim``-faces, rows are ``(dim-1)``-faces."""

    dim: int
    rows: tuple[Face, ...]
    cols: tuple[Face, ...]
    columns: tuple[Mapping[int, int], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i, j] = v
        return out


@dataclass(frozen=True)
class BettiReport:
    """Reduced Betti numbers by dimension and torsion coefficients.

    ``torsion`` is ``None`` when only ranks were computed.
    """

    betti: Mapping[int, int]
    torsion: Mapping[int, tuple[int, ...]] | None

    @property
    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in self.betti.items())

    def torsion_free(self) -> bool:
        if self.torsion is None:
            raise ValueError("torsion was not computed")
        return not any(self.torsion.values())


def boundary_matrix(fs: FaceSet, i: int) -> BoundaryMatrix:
    """Simplicial boundary ``d_i`` with sign ``(-1)**j`` for dropping the j-th vertex.

    ``d_0`` maps every vertex to the empty face (the augmentation).
    """
    rows = fs.faces(i - 1)
    cols = fs.faces(i)
    row_index = {f: r for r, f in enumerate(rows)}
    columns = []
    for f in cols:
        col = {}
        for j in range(len(f)):
            col[row_index[f[:j] + f[j + 1:]]] = -1 if j % 2 else 1
        columns.append(col)
    return BoundaryMatrix(i, tuple(rows), tuple(cols), tuple(columns))


def _eliminate(columns: Iterable[Mapping[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Clear unit pivots; return their number and the leftover columns."""
    cols = {c: dict(col) for c, col in enumerate(columns) if col}
    rows: dict[int, set[int]] = defaultdict(set)
    for c, col in cols.items():
        for r in col:
            rows[r].add(c)
    units = 0
    pending = sorted(cols, key=lambda c: len(cols[c]))
    progress = True
    while progress and pending:
        progress = False
        deferred = []
        for c in pending:
            col = cols.get(c)
            if not col:
                cols.pop(c, None)
                continue
            best = None
            for r, v in col.items():
                if v == 1 or v == -1:
                    size = len(rows[r])
                    if best is None or size < best[0]:
                        best = (size, r, v)
            if best is None:
                deferred.append(c)
                continue
            _, r, v = best
            for c2 in list(rows[r]):
                if c2 == c:
                    continue
                col2 = cols[c2]
                factor = col2[r] * v
                for rr, vv in col.items():
                    nv = col2.get(rr, 0) - factor * vv
                    if nv:
                        if rr not in col2:
                            rows[rr].add(c2)
                        col2[rr] = nv
                    elif rr in col2:
                        del col2[rr]
                        rows[rr].discard(c2)
            for rr in col:
                rows[rr].discard(c)
            del cols[c]
            units += 1
            progress = True
        pending = deferred
    return units, [cols[c] for c in pending if cols.get(c)]


def _densify(columns: Sequence[Mapping[int, int]]) -> list[list[int]]:
    used = sorted({r for col in columns for r in col})
    where = {r: i for i, r in enumerate(used)}
    dense = [[0] * len(columns) for _ in used]
    for j, col in enumerate(columns):
        for r, v in col.items():
            dense[where[r]][j] = v
    return dense


def smith_normal_form(matrix) -> list[int]:
    """Invariant factors ``d1 | d2 | ... | dr`` of an integer matrix.

    Pivot-driven row and column reduction with the smallest nonzero
    absolute value as pivot, in Python integers.
    """
    if isinstance(matrix, np.ndarray):
        matrix = matrix.tolist()
    a = [[int(v) for v in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        _move_pivot(a, t, *pivot)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        for j in range(t, n):
                            a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                _move_pivot(a, t, *_smallest_in_cross(a, t))
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            # add the offending row to row t; the next pass shrinks the pivot
            i = bad[0]
            for j in range(t, n):
                a[t][j] += a[i][j]
        out.append(abs(a[t][t]))
        t += 1
    return out


def _smallest_in_cross(a, t):
    best = (t, t)
    for i in range(t, len(a)):
        if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
            best = (i, t)
    for j in range(t, len(a[0])):
        if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
            best = (t, j)
    return best


def _move_pivot(a, t, i, j):
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def _bareiss_rank(a: list[list[int]]) -> int:
    a = [row[:] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    rank, prev = 0, 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


def integer_rank(bm: BoundaryMatrix) -> int:
    units, rest = _eliminate(bm.columns)
    return units + (_bareiss_rank(_densify(rest)) if rest else 0)


def _invariants(bm: BoundaryMatrix) -> list[int]:
    units, rest = _eliminate(bm.columns)
    return [1] * units + (smith_normal_form(_densify(rest)) if rest else [])


def reduced_homology(fs: FaceSet, torsion: bool = True) -> BettiReport:
    """Reduced Betti numbers of ``fs`` over ZZ, with torsion unless disabled."""
    top = fs.dimension
    ranks: dict[int, int] = {}
    tors: dict[int, tuple[int, ...]] = {}
    for i in range(0, top + 2):
        bm = boundary_matrix(fs, i)
        if torsion:
            inv = _invariants(bm)
            ranks[i] = len(inv)
            if i >= 1:
                tors[i - 1] = tuple(d for d in inv if d > 1)
        else:
            ranks[i] = integer_rank(bm)
    betti = {i: len(fs.faces(i)) - ranks[i] - ranks[i + 1] for i in range(0, top + 1)}
    report = BettiReport(betti, tors if torsion else None)
    if report.euler != euler_characteristic(fs, reduced=True):
        raise AssertionError("Betti numbers disagree with the reduced Euler characteristic")
    return report


def wedge_signature(br: BettiReport) -> tuple[int, int] | None:
    """``(i, c)`` when homology looks like a wedge of ``c`` spheres of dimension ``i``.

    ``(0, 0)`` stands for vanishing reduced homology.  Torsion, or support
    in more than one dimension (or in dimension 0), gives ``None``; so does
    a report whose torsion was never computed.
    """
    if br.torsion is None or not br.torsion_free():
        return None
    support = {i: b for i, b in br.betti.items() if b}
    if not support:
        return (0, 0)
    if len(support) == 1:
        (i, b), = support.items()
        if i > 0:
            return (i, b)
    return None
