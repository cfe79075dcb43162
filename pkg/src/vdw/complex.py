"""Construction of van der Waerden complexes and their fiber decomposition.

A face is a strictly increasing tuple of positive integers.  Internally the
enumeration deduplicates faces through integer bitmasks (bit ``v`` set for
vertex ``v``), which makes subset tests a single ``&``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Union

from .errors import DomainError

__all__ = [
    "Face",
    "ApFacet",
    "FaceSet",
    "BOTTOM",
    "Bottom",
    "FiberKey",
    "as_face",
    "face_mask",
    "mask_face",
    "facets",
    "enumerate_faces",
    "is_face",
    "gcdtr",
    "divisors",
    "step_set",
    "d_set",
    "fiber_key",
    "pair_fiber_key",
    "q_leq",
    "decompose",
    "euler_characteristic",
]

Face = tuple[int, ...]


class Bottom:
    """The bottom element of the fiber poset (singletons and ``{i, i+1}``)."""

    _instance: "Bottom | None" = None

    def __new__(cls) -> "Bottom":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __reduce__(self):
        return (Bottom, ())


BOTTOM = Bottom()
FiberKey = Union[Bottom, tuple[int, int, int]]


def as_face(vertices: Iterable[int]) -> Face:
    """Normalize an iterable of vertices to a sorted tuple, rejecting repeats."""
    face = tuple(sorted(vertices))
    if len(set(face)) != len(face):
        raise DomainError(f"face has repeated vertices: {face}")
    return face


def face_mask(face: Iterable[int]) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def mask_face(mask: int) -> Face:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, order=True)
class ApFacet:
    """Arithmetic progression ``start, start+step, ..., start+length*step``."""

    start: int
    step: int
    length: int

    def __post_init__(self) -> None:
        if self.start < 1 or self.step < 1 or self.length < 1:
            raise DomainError(f"invalid progression {self!r}")

    @property
    def vertices(self) -> Face:
        return tuple(self.start + i * self.step for i in range(self.length + 1))

    @property
    def end(self) -> int:
        return self.start + self.length * self.step


def facets(n: int, k: int) -> list[ApFacet]:
    """All progressions with ``k + 1`` terms inside ``[1, n]``, ordered by (start, step)."""
    if n < 1 or k < 1:
        raise DomainError(f"need n, k >= 1, got n={n}, k={k}")
    return [
        ApFacet(x, d, k)
        for x in range(1, n + 1)
        for d in range(1, (n - x) // k + 1)
    ]


@dataclass(frozen=True)
class FaceSet:
    """Explicit face list of a simplicial complex, bucketed by dimension.

    ``faces_by_dim[-1]`` holds the empty face.  Buckets are sorted
    lexicographically, which fixes the row/column layout of boundary
    matrices.  ``k`` is ``None`` for complexes not built as ``vdW(n, k)``.
    """

    n: int
    k: int | None
    faces_by_dim: Mapping[int, tuple[Face, ...]]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {}
        for dim, bucket in self.faces_by_dim.items():
            for i, f in enumerate(bucket):
                index[f] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_facets(cls, facet_list: Iterable[Iterable[int]], n: int | None = None,
                    k: int | None = None) -> "FaceSet":
        """Downward closure of ``facet_list`` (plus the vertices ``1..n``)."""
        masks: set[int] = {0}
        top = 0
        for facet in facet_list:
            face = as_face(facet)
            if face:
                top = max(top, face[-1])
            verts = [1 << v for v in face]
            for r in range(len(verts) + 1):
                for combo in combinations(verts, r):
                    masks.add(sum(combo))
        if n is None:
            n = top
        for v in range(1, n + 1):
            masks.add(1 << v)
        buckets: dict[int, list[Face]] = {}
        for m in masks:
            f = mask_face(m)
            buckets.setdefault(len(f) - 1, []).append(f)
        return cls(n, k, {d: tuple(sorted(b)) for d, b in sorted(buckets.items())})

    def __contains__(self, face) -> bool:
        return tuple(face) in self._index

    def __iter__(self) -> Iterator[Face]:
        for dim in sorted(self.faces_by_dim):
            yield from self.faces_by_dim[dim]

    def __len__(self) -> int:
        return len(self._index)

    @property
    def dimension(self) -> int:
        return max(self.faces_by_dim)

    def faces(self, dim: int) -> tuple[Face, ...]:
        return self.faces_by_dim.get(dim, ())

    def index(self, face: Face) -> int:
        """Position of ``face`` inside its dimension bucket."""
        return self._index[face]

    def nonempty(self) -> Iterator[Face]:
        for dim in sorted(self.faces_by_dim):
            if dim >= 0:
                yield from self.faces_by_dim[dim]

    def counts(self) -> dict[int, int]:
        return {d: len(b) for d, b in sorted(self.faces_by_dim.items())}

    @cached_property
    def maximal_faces(self) -> tuple[Face, ...]:
        masks = {face_mask(f) for f in self}
        out = []
        for f in self:
            m = face_mask(f)
            if not any(m != g and m & g == m for g in masks):
                out.append(f)
        return tuple(out)


def enumerate_faces(n: int, k: int) -> FaceSet:
    """Every face of ``vdW(n, k)``, including the empty face and all vertices."""
    return FaceSet.from_facets((f.vertices for f in facets(n, k)), n=n, k=k)


def _check_vertices(face: Face, n: int) -> None:
    for v in face:
        if not 1 <= v <= n:
            raise DomainError(f"vertex {v} outside [1, {n}]")


def _progression_fits(x: int, y: int, d: int, n: int, k: int) -> bool:
    """Is there a step-``d`` facet of ``vdW(n, k)`` containing both ``x < y``?

    Requires ``d | y - x``.  The progression ``x..y`` has ``m`` steps and
    must be extended by ``k - m`` steps split between below ``x`` and above
    ``y``.
    """
    m = (y - x) // d
    return m <= k and (x - 1) // d + (n - y) // d >= k - m


def is_face(face: Iterable[int], n: int, k: int) -> bool:
    """Membership in ``vdW(n, k)`` without enumerating the complex."""
    face = as_face(face)
    _check_vertices(face, n)
    if len(face) <= 1:
        return True
    x, y = face[0], face[-1]
    g = gcdtr(face)
    return any(_progression_fits(x, y, d, n, k) for d in divisors(g))


def gcdtr(face: Iterable[int]) -> int:
    """gcd of the differences to the minimum; 0 for a singleton."""
    face = as_face(face)
    if not face:
        raise DomainError("gcdtr of the empty set is undefined")
    x = face[0]
    return reduce(math.gcd, (v - x for v in face[1:]), 0)


def divisors(m: int) -> list[int]:
    if m < 1:
        raise DomainError(f"divisors needs m >= 1, got {m}")
    small, large = [], []
    for d in range(1, math.isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
    return small + large[::-1]


def step_set(n: int, k: int, x: int, y: int) -> set[int]:
    """Steps of the facets of ``vdW(n, k)`` that contain the edge ``{x, y}``."""
    if not 1 <= x < y <= n:
        raise DomainError(f"need 1 <= x < y <= n, got x={x}, y={y}, n={n}")
    out = {d for d in divisors(y - x) if _progression_fits(x, y, d, n, k)}
    if not out:
        raise DomainError(f"{{{x}, {y}}} is not a face of vdW({n}, {k})")
    return out


def d_set(n: int, k: int, x: int, y: int) -> set[int]:
    """Divisors ``d`` of ``y - x`` whose progression ``x, x+d, ..., y`` is a face."""
    if not 1 <= x < y <= n:
        raise DomainError(f"need 1 <= x < y <= n, got x={x}, y={y}, n={n}")
    return {d for d in divisors(y - x) if is_face(range(x, y + 1, d), n, k)}


def fiber_key(face: Iterable[int], n: int | None = None, k: int | None = None) -> FiberKey:
    """``(min, max, gcdtr)`` of a face, or ``BOTTOM`` when ``max - min <= 1``.

    ``n`` and ``k`` are only used to validate membership when given.
    """
    face = as_face(face)
    if not face:
        raise DomainError("the empty face has no fiber")
    if n is not None and k is not None and not is_face(face, n, k):
        raise DomainError(f"{face} is not a face of vdW({n}, {k})")
    x, y = face[0], face[-1]
    if y - x <= 1:
        return BOTTOM
    return (x, y, gcdtr(face))


def pair_fiber_key(face: Face) -> Bottom | tuple[int, int]:
    """The coarser key ``(min, max)`` that ignores gcdtr."""
    if not face:
        raise DomainError("the empty face has no fiber")
    x, y = face[0], face[-1]
    return BOTTOM if y - x <= 1 else (x, y)


def q_leq(a: FiberKey, b: FiberKey) -> bool:
    """Order on fiber keys: interval containment with reversed step divisibility."""
    if a is BOTTOM:
        return True
    if b is BOTTOM:
        return False
    x, y, d = a
    x2, y2, d2 = b
    return x2 <= x < y <= y2 and d % d2 == 0


def decompose(n: int, k: int, fs: FaceSet | None = None) -> dict[FiberKey, list[Face]]:
    """Partition of the non-empty faces of ``vdW(n, k)`` by :func:`fiber_key`."""
    if fs is None:
        fs = enumerate_faces(n, k)
    out: dict[FiberKey, list[Face]] = {}
    for f in fs.nonempty():
        out.setdefault(fiber_key(f), []).append(f)
    return out


def euler_characteristic(fs: FaceSet | Iterable[Face], reduced: bool = False) -> int:
    """Alternating face count; ``reduced=True`` also counts the empty face."""
    chi = 0
    for f in fs:
        dim = len(f) - 1
        if dim < 0 and not reduced:
            continue
        chi += -1 if dim % 2 else 1
    return chi
