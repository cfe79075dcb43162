"""Discrete Morse matchings on face posets of van der Waerden complexes.

Matchings are sets of cover pairs ``(lower, upper)`` with ``upper`` one
vertex larger than ``lower``.  :func:`verify_matching` checks disjointness
and acyclicity; the ``build_*`` functions construct the three families of
matchings (fiberwise Gamma matchings, the lcm matching behind the
contractibility bound, and the hand-made matchings for ``vdW(5k, k)`` with
``2 <= k <= 5``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
from typing import Callable, Collection, Iterable, Mapping

from .complex import (
    BOTTOM,
    Face,
    FaceSet,
    as_face,
    decompose,
    enumerate_faces,
    euler_characteristic,
    fiber_key,
    pair_fiber_key,
    step_set,
)
from .errors import (
    DomainError,
    InvariantViolation,
    MatchingParseError,
    PreconditionError,
    StructuralError,
)
from .gamma import _partner as _gamma_partner
from .gamma import _smallest_prime
from .numtheory import bound_certificate, r_of_k

__all__ = [
    "MorseMatching",
    "MorseVector",
    "StrategyReport",
    "verify_matching",
    "check_structure",
    "find_cycle",
    "critical_cells",
    "morse_vector",
    "homotopy_summary",
    "patchwork",
    "build_theorem_main_matching",
    "build_contractible_matching",
    "lcm_toggle_step",
    "build_example_matching",
    "EXAMPLE_CASES",
    "morse_inequalities_check",
    "dump_matching",
    "load_matching",
]

Pair = tuple[Face, Face]


@dataclass(frozen=True)
class MorseMatching:
    pairs: tuple[Pair, ...]
    scope: FaceSet | None = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def matched(self) -> set[Face]:
        return {f for p in self.pairs for f in p}

    def partner_map(self) -> dict[Face, Face]:
        out = {}
        for lo, up in self.pairs:
            out[lo] = up
            out[up] = lo
        return out


@dataclass(frozen=True)
class MorseVector:
    """Number of critical cells in each dimension."""

    c: Mapping[int, int]

    def __getitem__(self, dim: int) -> int:
        return self.c.get(dim, 0)

    @property
    def euler(self) -> int:
        return sum((-1) ** i * ci for i, ci in self.c.items())

    def as_list(self) -> list[int]:
        if not self.c:
            return []
        return [self[i] for i in range(max(self.c) + 1)]


@dataclass(frozen=True)
class StrategyReport:
    strategy: str
    n: int
    k: int
    matching: MorseMatching
    critical: tuple[Face, ...]
    morse_vector: MorseVector
    acyclic: bool
    homotopy_summary: str | None
    a: int | None = None


def check_structure(faces: Collection[Face], m: MorseMatching) -> None:
    """Raise unless ``m`` consists of disjoint cover pairs of non-empty faces in ``faces``."""
    seen: set[Face] = set()
    for lo, up in m.pairs:
        for f in (lo, up):
            if f not in faces:
                raise DomainError(f"face {f} is not in the complex")
        if not lo:
            raise StructuralError("the empty face cannot be matched")
        if len(up) != len(lo) + 1 or not set(lo) < set(up):
            raise StructuralError(f"not a cover pair: {lo} / {up}")
        for f in (lo, up):
            if f in seen:
                raise StructuralError(f"duplicate face {f}")
            seen.add(f)


def find_cycle(m: MorseMatching) -> list[Face] | None:
    """A closed V-path ``a0 < b0 > a1 < b1 ... > a0`` if one exists.

    Only pairs are graph nodes: pair ``(a, b)`` points to pair ``(a', b')``
    when ``a'`` is a facet of ``b`` other than ``a``.  Any directed cycle of
    the modified Hasse diagram alternates between two adjacent dimensions
    and passes only through matched faces, so this graph sees all of them.
    The graph splits into independent layers by the dimension of ``a``.
    """
    up_of = {lo: up for lo, up in m.pairs}
    layers: dict[int, TopologicalSorter] = {}
    for lo, up in m.pairs:
        ts = layers.setdefault(len(lo), TopologicalSorter())
        ts.add(lo)
        for i in range(len(up)):
            nxt = up[:i] + up[i + 1:]
            if nxt != lo and nxt in up_of:
                ts.add(nxt, lo)
    for ts in layers.values():
        try:
            ts.prepare()
        except CycleError as exc:
            # graphlib lists the cycle in edge order and repeats the start node
            lows = list(exc.args[1])[:-1]
            path: list[Face] = []
            for lo in lows:
                path += [lo, up_of[lo]]
            path.append(lows[0])
            return path
    return None


def verify_matching(faces: Collection[Face], m: MorseMatching) -> bool:
    """True iff ``m`` is acyclic; structural problems raise instead."""
    check_structure(faces, m)
    return find_cycle(m) is None


def critical_cells(faces: Iterable[Face], m: MorseMatching) -> list[Face]:
    """Unmatched non-empty faces sorted by (dimension, vertices)."""
    matched = m.matched()
    return sorted((f for f in faces if f and f not in matched), key=lambda f: (len(f), f))


def morse_vector(critical: Iterable[Face]) -> MorseVector:
    c: dict[int, int] = {}
    for f in critical:
        c[len(f) - 1] = c.get(len(f) - 1, 0) + 1
    return MorseVector(dict(sorted(c.items())))


def homotopy_summary(mv: MorseVector) -> str | None:
    """Homotopy type when the critical cells force a wedge of equidimensional spheres."""
    if mv[0] != 1:
        return None
    higher = {i: c for i, c in mv.c.items() if i > 0 and c}
    if not higher:
        return "contractible"
    if len(higher) == 1:
        (i, c), = higher.items()
        return f"wedge of {c} sphere{'s' if c != 1 else ''} of dim {i}"
    return None


def _report(strategy: str, fs: FaceSet, m: MorseMatching, a: int | None = None) -> StrategyReport:
    acyclic = verify_matching(fs, m)
    crit = tuple(critical_cells(fs, m))
    mv = morse_vector(crit)
    return StrategyReport(
        strategy=strategy,
        n=fs.n,
        k=fs.k,
        matching=m,
        critical=crit,
        morse_vector=mv,
        acyclic=acyclic,
        homotopy_summary=homotopy_summary(mv) if acyclic else None,
        a=a,
    )


def patchwork(fs: FaceSet, fiber_matchings: Mapping[object, MorseMatching],
              key: Callable[[Face], object] = fiber_key) -> MorseMatching:
    """Union of matchings that each live inside one fiber of ``key``."""
    pairs: list[Pair] = []
    seen: set[Face] = set()
    for q, mq in fiber_matchings.items():
        for lo, up in mq.pairs:
            for f in (lo, up):
                if f not in fs:
                    raise DomainError(f"face {f} is not in the complex")
                if key(f) != q:
                    raise StructuralError(f"pair ({lo}, {up}) leaves fiber {q!r}")
                if f in seen:
                    raise StructuralError(f"duplicate face {f} across fibers")
                seen.add(f)
            pairs.append((lo, up))
    return MorseMatching(tuple(sorted(pairs, key=_pair_order)), scope=fs)


def _pair_order(p: Pair):
    return (len(p[0]), p[0], p[1])


def _bottom_pairs(fs: FaceSet) -> list[Pair]:
    return [((i,), (i, i + 1)) for i in range(1, fs.n) if (i, i + 1) in fs]


@lru_cache(maxsize=None)
def _gamma_mate(m: int, g: Face) -> Face | None:
    return _gamma_partner(m, g, _smallest_prime)


def build_theorem_main_matching(n: int, k: int, fs: FaceSet | None = None) -> StrategyReport:
    """Fiberwise Gamma matchings glued over the ``(min, max, gcdtr)`` fibers.

    Every critical cell has dimension at most ``r(k)``; this is asserted.
    """
    if n < 1 or k < 1:
        raise DomainError(f"need n, k >= 1, got n={n}, k={k}")
    fs = fs or enumerate_faces(n, k)
    fibers = decompose(n, k, fs)
    per_fiber: dict[object, MorseMatching] = {BOTTOM: MorseMatching(tuple(_bottom_pairs(fs)))}
    for q, members in fibers.items():
        if q is BOTTOM:
            continue
        x, y, d = q
        span = (y - x) // d
        pairs = []
        for f in members:
            g = tuple((v - x) // d for v in f)
            mate = _gamma_mate(span, g)
            if mate is not None and len(mate) > len(g):
                pairs.append((f, tuple(x + d * v for v in mate)))
        per_fiber[q] = MorseMatching(tuple(pairs))
    report = _report("theorem-main", fs, patchwork(fs, per_fiber))
    r = r_of_k(k)
    worst = max(len(c) - 1 for c in report.critical)
    if worst > r:
        raise InvariantViolation(f"critical cell of dimension {worst} > r(k) = {r}")
    return report


def _divisibility_minima(steps: Iterable[int]) -> list[int]:
    steps = sorted(steps)
    return [d for d in steps if not any(e != d and d % e == 0 for e in steps)]


def _toggle(face: Face, e: int) -> Face:
    if e in face:
        return tuple(v for v in face if v != e)
    return tuple(sorted((*face, e)))


def lcm_toggle_step(n: int, k: int, x: int, y: int) -> int:
    """``lcm`` of the divisibility-minimal steps of facets through the edge ``{x, y}``.

    The contractible matching toggles ``x + lcm_toggle_step(...)`` on the
    ``(x, y)`` fiber, so it only makes sense when the result is below ``y - x``.
    """
    return math.lcm(*_divisibility_minima(step_set(n, k, x, y)))


def build_contractible_matching(n: int, k: int, a: int, fs: FaceSet | None = None) -> StrategyReport:
    """Matching with the single critical cell ``{n}`` under the ``L(a)/M(a)`` bound.

    On the fiber of faces with ``min = x`` and ``max = y`` (``y - x >= 2``)
    every face is toggled against ``x + lcm(T)``, where ``T`` holds the
    divisibility-minimal steps of facets through ``{x, y}``.
    """
    if a <= 1:
        raise PreconditionError(f"a > 1 violated: a = {a}")
    cert = bound_certificate(a)
    if k < cert.threshold:
        raise PreconditionError(
            f"k >= L(a)/M(a) violated: k = {k} < {cert.L}/{cert.M} = {cert.threshold}")
    if n > (a + 1) * k:
        raise PreconditionError(f"n <= (a+1)*k violated: n = {n} > {(a + 1) * k}")
    if n <= k:
        raise PreconditionError(f"n > k violated: n = {n} <= k = {k} leaves no edges")
    fs = fs or enumerate_faces(n, k)
    per_fiber: dict[object, MorseMatching] = {BOTTOM: MorseMatching(tuple(_bottom_pairs(fs)))}
    grouped: dict[object, list[Face]] = {}
    for f in fs.nonempty():
        q = pair_fiber_key(f)
        if q is not BOTTOM:
            grouped.setdefault(q, []).append(f)
    for (x, y), members in grouped.items():
        ell = lcm_toggle_step(n, k, x, y)
        if ell >= y - x:
            raise InvariantViolation(f"lcm(T) = {ell} is not below y - x = {y - x} at ({x}, {y})")
        pairs = []
        for f in members:
            if x + ell in f:
                continue
            up = _toggle(f, x + ell)
            if up not in fs:
                raise InvariantViolation(f"{up} should be a face of vdW({n}, {k})")
            pairs.append((f, up))
        per_fiber[(x, y)] = MorseMatching(tuple(pairs))
    m = patchwork(fs, per_fiber, key=pair_fiber_key)
    return _report("contractible", fs, m, a=a)


# Hand-built matchings for vdW(5k, k), 2 <= k <= 5.  Each rule maps a face to
# its intended partner or None; the partner is kept only if it is a face.

Rule = Callable[[Face, FaceSet], "Face | None"]


def _rule_10_2(f: Face, fs: FaceSet) -> Face | None:
    x, y = f[0], f[-1]
    if len(f) == 1:
        return (x, x + 1)
    if len(f) == 2 and y - x == 1:
        return (x,)
    if len(f) == 2 and (y - x) % 2 == 0:
        return (x, (x + y) // 2, y)
    if len(f) == 3 and f[1] - x == y - f[1]:
        return (x, y)
    return None


def _rule_15_3(f: Face, fs: FaceSet) -> Face | None:
    x, y = f[0], f[-1]
    diff = y - x
    if diff in (0, 1, 2, 4, 8):
        return _rule_10_2(f, fs)
    if diff % 3 == 0:
        return _toggle(f, x + diff // 3)
    return None


def _rule_20_4(f: Face, fs: FaceSet) -> Face | None:
    x, y = f[0], f[-1]
    diff = y - x
    if diff in (0, 1, 2, 3, 6, 9):
        return _rule_15_3(f, fs)
    if diff == 4:
        return _toggle(f, x + 2)
    if diff == 8:
        return _toggle(f, x + 4)
    if diff == 16:
        return _toggle(f, x + 8)
    if diff == 12:
        mate = _toggle(f, x + 6)
        if mate in fs:
            return mate
        if f == (x, x + 8, x + 12):
            return (x, x + 4, x + 8, x + 12)
        if f == (x, x + 4, x + 8, x + 12):
            return (x, x + 8, x + 12)
    return None


def _rule_25_5(f: Face, fs: FaceSet) -> Face | None:
    x, y = f[0], f[-1]
    diff = y - x
    if diff in (0, 1, 2, 3, 4, 6, 8, 9, 12, 16):
        return _rule_20_4(f, fs)
    if diff % 5 == 0:
        return _toggle(f, x + diff // 5)
    return None


EXAMPLE_CASES: dict[tuple[int, int], Rule] = {
    (10, 2): _rule_10_2,
    (15, 3): _rule_15_3,
    (20, 4): _rule_20_4,
    (25, 5): _rule_25_5,
}


def build_example_matching(n: int, k: int, fs: FaceSet | None = None) -> StrategyReport:
    try:
        rule = EXAMPLE_CASES[(n, k)]
    except KeyError:
        raise DomainError(
            f"no hand-built matching for vdW({n}, {k}); supported: {sorted(EXAMPLE_CASES)}"
        ) from None
    fs = fs or enumerate_faces(n, k)
    pairs = []
    for f in fs.nonempty():
        mate = rule(f, fs)
        if mate is None or mate not in fs:
            continue
        if rule(mate, fs) != f:
            raise InvariantViolation(f"rule is not an involution at {f} -> {mate}")
        if len(mate) > len(f):
            pairs.append((f, mate))
    m = MorseMatching(tuple(sorted(pairs, key=_pair_order)), scope=fs)
    return _report("example", fs, m)


def morse_inequalities_check(mv: MorseVector, br) -> bool:
    """Weak Morse inequalities and the Euler identity against reduced Betti numbers."""
    top = max([*mv.c, *br.betti, 0])
    unreduced = {i: br.betti.get(i, 0) + (1 if i == 0 else 0) for i in range(top + 1)}
    if any(unreduced[i] > mv[i] for i in range(top + 1)):
        return False
    return mv.euler == sum((-1) ** i * b for i, b in unreduced.items())


def _fmt(face: Face) -> str:
    return ",".join(map(str, face))


def dump_matching(m: MorseMatching, critical: Iterable[Face] = ()) -> str:
    """Tab-separated pairs, then the critical cells under a ``# critical`` line."""
    lines = [f"{_fmt(lo)}\t{_fmt(up)}" for lo, up in sorted(m.pairs, key=_pair_order)]
    lines.append("# critical")
    lines += [_fmt(c) for c in sorted(critical, key=lambda f: (len(f), f))]
    return "\n".join(lines) + "\n"


def _parse_face(text: str, lineno: int) -> Face:
    try:
        verts = [int(t) for t in text.split(",")]
    except ValueError:
        raise MatchingParseError(lineno, f"bad face {text!r}") from None
    try:
        return as_face(verts)
    except ValueError as exc:
        raise MatchingParseError(lineno, str(exc)) from None


def load_matching(text: str) -> tuple[MorseMatching, tuple[Face, ...] | None]:
    """Inverse of :func:`dump_matching`; critical cells are ``None`` without a footer."""
    pairs: list[Pair] = []
    critical: list[Face] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].strip() == "critical":
                critical = []
            continue
        if critical is not None:
            critical.append(_parse_face(line, lineno))
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise MatchingParseError(lineno, "expected 'lower<TAB>upper'")
        pairs.append((_parse_face(parts[0], lineno), _parse_face(parts[1], lineno)))
    return MorseMatching(tuple(pairs)), None if critical is None else tuple(critical)

