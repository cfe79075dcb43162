"""The families Gamma(k) and their Morse matchings.

``Gamma(k)`` collects the subsets ``F`` of ``[0, k]`` that contain both ``0``
and ``k`` and have ``gcd(F) == 1``.  Every fiber of the main decomposition
of ``vdW(n, k)`` is an affine copy of one of these families.

The matching is given as an involution :func:`gamma_partner`.  For
non-squarefree ``k`` it toggles the radical of ``k``.  For squarefree ``k``
it toggles ``k/p`` whenever the face stays coprime without it, and otherwise
recurses into ``Gamma(k/p)`` through ``G -> p*G + {k/p}``.

|Gamma(k)| is roughly ``2**(k-1)``, so explicit enumeration stops being
practical well before ``k = 60``.  :func:`verify_gamma_matching` handles
large ``k`` by slicing: the matching only ever toggles elements of the
critical set ``T`` (or the radical), so a directed cycle can never remove an
element outside ``T`` and must live inside one slice ``{R | U : R <= T}``
with ``U`` fixed.  Slices with equal ``gcd(U | {k})`` are isomorphic, so one
representative per gcd value suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Callable

import numpy as np

from .complex import Face
from .errors import DomainError
from .numtheory import factorize, is_squarefree, radical

__all__ = [
    "GammaFamily",
    "GammaMatching",
    "gamma",
    "gamma_partner",
    "match_gamma",
    "squarefree_critical_cell",
    "touched_elements",
    "gamma_slices",
    "verify_gamma_matching",
    "mobius_via_gamma",
    "gamma_signed_sum_bruteforce",
    "BRUTE_FORCE_MAX_K",
    "ENUMERATION_MAX_K",
]

BRUTE_FORCE_MAX_K = 28
# Gamma(k) has about 2**(k-1) members; past this point listing them as tuples
# exhausts memory, and the slice-based functions should be used instead.
ENUMERATION_MAX_K = 22

PrimeChoice = Callable[[int], int]


def _smallest_prime(k: int) -> int:
    return min(factorize(k))


def _largest_prime(k: int) -> int:
    return max(factorize(k))


_CHOICES = {"smallest": _smallest_prime, "largest": _largest_prime}


def _chooser(choose: str | PrimeChoice) -> PrimeChoice:
    if callable(choose):
        return choose
    try:
        return _CHOICES[choose]
    except KeyError:
        raise DomainError(f"unknown prime choice {choose!r}") from None


def _gcd(face) -> int:
    return reduce(math.gcd, face, 0)


@dataclass(frozen=True)
class GammaFamily:
    k: int
    members: tuple[Face, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, face) -> bool:
        return _in_gamma(tuple(face), self.k)


@dataclass(frozen=True)
class GammaMatching:
    k: int
    pairs: tuple[tuple[Face, Face], ...]
    critical: Face | None


def _in_gamma(face: Face, k: int) -> bool:
    return (
        len(face) >= 2
        and face[0] == 0
        and face[-1] == k
        and len(set(face)) == len(face)
        and all(0 <= v <= k for v in face)
        and _gcd(face) == 1
    )


def gamma(k: int) -> GammaFamily:
    """Enumerate ``Gamma(k)`` by brute force over subsets of ``[1, k-1]``.

    Members are sorted by size, then lexicographically.
    """
    if k < 1:
        raise DomainError(f"Gamma(k) needs k >= 1, got {k}")
    if k > ENUMERATION_MAX_K:
        raise DomainError(
            f"Gamma({k}) is too large to list (cap {ENUMERATION_MAX_K}); "
            "use verify_gamma_matching or mobius_via_gamma")
    inner = range(1, k)
    members = []
    for r in range(k):
        for combo in combinations(inner, r):
            if math.gcd(k, _gcd(combo)) == 1:
                members.append((0, *combo, k))
    return GammaFamily(k, tuple(members))


def gamma_partner(k: int, face: Face, choose: str | PrimeChoice = "smallest") -> Face | None:
    """Matched partner of ``face`` in ``Gamma(k)``, or ``None`` if critical."""
    face = tuple(face)
    if not _in_gamma(face, k):
        raise DomainError(f"{face} is not in Gamma({k})")
    return _partner(k, face, _chooser(choose))


def _toggle(face: Face, e: int) -> Face:
    if e in face:
        return tuple(v for v in face if v != e)
    return tuple(sorted((*face, e)))


def _partner(k: int, face: Face, choose: PrimeChoice) -> Face | None:
    if k == 1:
        return None
    if not is_squarefree(k):
        return _toggle(face, radical(k))
    p = choose(k)
    t = k // p
    rest = tuple(v for v in face if v != t)
    if _gcd(rest) == 1:
        return _toggle(face, t)
    # gcd(rest) == p: the face is p*G + {k/p} for some G in Gamma(k/p)
    sub = tuple(v // p for v in rest)
    mate = _partner(t, sub, choose)
    if mate is None:
        return None
    return tuple(sorted((*(p * v for v in mate), t)))


def match_gamma(k: int, choose: str | PrimeChoice = "smallest") -> GammaMatching:
    """Explicit matching on ``Gamma(k)``; pairs are ``(lower, upper)``.

    Lists the whole family, so ``k`` is capped at ``ENUMERATION_MAX_K``.
    """
    chooser = _chooser(choose)
    pairs = []
    critical = None
    for face in gamma(k).members:
        mate = _partner(k, face, chooser)
        if mate is None:
            if critical is not None:
                raise AssertionError(f"two critical cells in Gamma({k})")
            critical = face
        elif len(mate) > len(face):
            pairs.append((face, mate))
    return GammaMatching(k, tuple(pairs), critical)


def squarefree_critical_cell(k: int) -> Face:
    """``{0, k}`` together with ``k/q`` for every prime ``q | k``."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not is_squarefree(k):
        raise DomainError(f"{k} is not squarefree")
    return tuple(sorted({0, k} | {k // q for q in factorize(k)}))


def touched_elements(k: int) -> tuple[int, ...]:
    """Elements of ``[1, k-1]`` the matching may toggle."""
    if k == 1:
        return ()
    if not is_squarefree(k):
        return (radical(k),)
    return tuple(sorted(k // q for q in factorize(k)))


@dataclass(frozen=True)
class _Slice:
    g: int
    witness: tuple[int, ...]
    count: int
    signed: int


def gamma_slices(k: int) -> list[_Slice]:
    """One representative ``U`` per value of ``gcd(U | {k})``.

    ``U`` ranges over subsets of ``[1, k-1]`` avoiding the touched
    elements.  ``count`` is how many ``U`` share the gcd value and
    ``signed`` is the sum of ``(-1)**|U|`` over them, both computed by a
    dynamic program over the divisor lattice of ``k``.
    """
    touched = set(touched_elements(k))
    # gcd value -> (count, signed count, smallest witness)
    states: dict[int, tuple[int, int, tuple[int, ...]]] = {k: (1, 1, ())}
    for e in range(1, k):
        if e in touched:
            continue
        nxt = dict(states)
        for g, (cnt, sgn, wit) in states.items():
            h = math.gcd(g, e)
            c2, s2, w2 = nxt.get(h, (0, 0, None))
            cand = (*wit, e)
            if w2 is None or (len(cand), cand) < (len(w2), w2):
                w2 = cand
            nxt[h] = (c2 + cnt, s2 - sgn, w2)
        states = nxt
    return [_Slice(g, w, c, s) for g, (c, s, w) in sorted(states.items())]


def _slice_faces(k: int, sl: _Slice) -> list[Face]:
    touched = touched_elements(k)
    out = []
    for r in range(len(touched) + 1):
        for combo in combinations(touched, r):
            face = tuple(sorted((0, k, *sl.witness, *combo)))
            if _gcd(face) == 1:
                out.append(face)
    return out


@dataclass(frozen=True)
class GammaVerification:
    k: int
    acyclic: bool
    closed: bool
    critical_count: int
    critical: tuple[Face, ...]
    slices_checked: int

    @property
    def ok(self) -> bool:
        return self.acyclic and self.closed


def verify_gamma_matching(k: int, choose: str | PrimeChoice = "smallest") -> GammaVerification:
    """Check the Gamma(k) matching through its slice decomposition.

    ``closed`` says every partner is again in ``Gamma(k)``, differs by one
    element inside the same slice, and maps back.  ``critical`` lists the
    unmatched faces explicitly when their total number is small.
    """
    from .morse import MorseMatching, verify_matching

    chooser = _chooser(choose)
    touched = set(touched_elements(k))
    acyclic = closed = True
    crit_total = 0
    crit_faces: list[Face] = []
    slices = gamma_slices(k)
    for sl in slices:
        faces = _slice_faces(k, sl)
        members = set(faces)
        pairs = []
        unmatched = []
        for f in faces:
            mate = _partner(k, f, chooser)
            if mate is None:
                unmatched.append(f)
                continue
            diff = set(f) ^ set(mate)
            if (mate not in members or len(diff) != 1 or not diff <= touched
                    or _partner(k, mate, chooser) != f):
                closed = False
                continue
            if len(mate) > len(f):
                pairs.append((f, mate))
        if closed:
            acyclic &= verify_matching(members, MorseMatching(tuple(pairs)))
        crit_total += sl.count * len(unmatched)
        if sl.count == 1:
            crit_faces.extend(unmatched)
    return GammaVerification(k, acyclic, closed, crit_total, tuple(sorted(crit_faces)),
                             len(slices))


def gamma_signed_sum_bruteforce(k: int, chunk: int = 1 << 20) -> int:
    """``sum((-1)**|F| for F in Gamma(k))`` by scanning every subset bitmask.

    Bit ``i`` of a mask stands for the element ``i + 1`` of ``[1, k-1]``.
    A subset is coprime to ``k`` iff for every prime ``p | k`` it contains
    some element not divisible by ``p``.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if k == 1:
        return 1
    width = k - 1
    nondiv = [sum(1 << (e - 1) for e in range(1, k) if e % p) for p in factorize(k)]
    total = 0
    for lo in range(0, 1 << width, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << width), dtype=np.uint64)
        ok = np.ones(masks.shape, dtype=bool)
        for nd in nondiv:
            ok &= (masks & np.uint64(nd)) != 0
        parity = np.bitwise_count(masks[ok]) & 1
        total += int(parity.size - 2 * int(parity.sum()))
    return total


def mobius_via_gamma(k: int, brute_force_max: int = BRUTE_FORCE_MAX_K) -> int:
    """Signed count ``sum((-1)**|F|)`` over ``Gamma(k)``.

    Up to ``brute_force_max`` every subset is scanned.  Beyond that matched
    pairs cancel inside each slice, so only unmatched faces contribute, each
    weighted by the signed number of slice representatives it stands for.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if k <= brute_force_max:
        return gamma_signed_sum_bruteforce(k)
    total = 0
    for sl in gamma_slices(k):
        for f in _slice_faces(k, sl):
            if _partner(k, f, _smallest_prime) is None:
                # sign of f is (-1)**(|witness| + |R| + 2); witness sign lives in sl.signed
                r = len(f) - 2 - len(sl.witness)
                total += sl.signed * (-1) ** r
    return total
