"""Number-theoretic helpers: primes, primorials, Moebius, radical, L(a)/M(a).

Everything here works in exact integer arithmetic.  Thresholds such as
``L(a)/M(a)`` are kept as :class:`fractions.Fraction` even though they are
integral, so comparisons against ``k`` never go through floats.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "primes_up_to",
    "nth_prime",
    "factorize",
    "primorial",
    "primorial_of_nth_prime",
    "r_of_k",
    "mobius",
    "radical",
    "is_squarefree",
    "is_prime_power",
    "lcm_up_to",
    "BoundCertificate",
    "bound_certificate",
    "contractible_by_theorem",
    "lm_monotone_check",
    "asymptotic_ratio",
]


class _Sieve:
    """Smallest-prime-factor table, grown by doubling on demand."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._spf: list[int] = [0, 1]
        self._primes: list[int] = []

    def _grow(self, limit: int) -> None:
        spf = list(range(limit + 1))
        for i in range(2, math.isqrt(limit) + 1):
            if spf[i] == i:
                for j in range(i * i, limit + 1, i):
                    if spf[j] == j:
                        spf[j] = i
        self._spf = spf
        self._primes = [i for i in range(2, limit + 1) if spf[i] == i]

    def ensure(self, limit: int) -> None:
        if limit < len(self._spf):
            return
        with self._lock:
            if limit >= len(self._spf):
                self._grow(max(limit, 2 * len(self._spf), 1024))

    def spf(self, m: int) -> int:
        self.ensure(m)
        return self._spf[m]

    def primes(self, limit: int) -> list[int]:
        self.ensure(limit)
        hi = bisect_right(self._primes, limit)
        return self._primes[:hi]

    def nth(self, r: int) -> int:
        # p_r <= r (ln r + ln ln r) for r >= 6
        bound = 15 if r < 6 else int(r * (math.log(r) + math.log(math.log(r)))) + 1
        self.ensure(bound)
        return self._primes[r - 1]


_SIEVE = _Sieve()


def primes_up_to(x: int) -> list[int]:
    """All primes ``p <= x`` in increasing order."""
    if x < 2:
        return []
    return _SIEVE.primes(x)


def nth_prime(r: int) -> int:
    """The r-th prime, 1-indexed (``nth_prime(1) == 2``)."""
    if r < 1:
        raise DomainError(f"prime index must be >= 1, got {r}")
    return _SIEVE.nth(r)


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of ``m >= 1`` as ``{prime: exponent}``.

    Uses the sieve table for small inputs and trial division otherwise.
    """
    if m < 1:
        raise DomainError(f"can only factor positive integers, got {m}")
    out: dict[int, int] = {}
    if m <= 1 << 20:
        while m > 1:
            p = _SIEVE.spf(m)
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
        return out
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def primorial(x: int) -> int:
    """Product of all primes ``<= x``; the empty product 1 for ``x < 2``."""
    if x < 0:
        raise DomainError(f"primorial needs x >= 0, got {x}")
    return math.prod(primes_up_to(x))


def primorial_of_nth_prime(r: int) -> int:
    """Product of the first ``r`` primes, with ``r = 0`` giving 1."""
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r}")
    if r == 0:
        return 1
    return primorial(nth_prime(r))


def r_of_k(k: int) -> int:
    """The unique ``r >= 1`` with ``prod(p_1..p_{r-1}) <= k < prod(p_1..p_r)``."""
    if k < 1:
        raise DomainError(f"r(k) needs k >= 1, got {k}")
    r, prod = 1, 2
    while k >= prod:
        r += 1
        prod *= nth_prime(r)
    return r


def mobius(k: int) -> int:
    if k < 1:
        raise DomainError(f"mobius needs k >= 1, got {k}")
    fac = factorize(k)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def radical(k: int) -> int:
    """Product of the distinct primes dividing ``k`` (1 for ``k = 1``)."""
    if k < 1:
        raise DomainError(f"radical needs k >= 1, got {k}")
    return math.prod(factorize(k))


def is_squarefree(k: int) -> bool:
    return radical(k) == k


def is_prime_power(m: int) -> bool:
    """True for ``p**e`` with ``e >= 1``."""
    return m >= 2 and len(factorize(m)) == 1


def lcm_up_to(a: int) -> int:
    """``lcm(1, 2, ..., a)`` by folding :func:`math.lcm`."""
    if a < 1:
        raise DomainError(f"lcm_up_to needs a >= 1, got {a}")
    return math.lcm(*range(1, a + 1))


@dataclass(frozen=True)
class BoundCertificate:
    """Data behind the contractibility bound for a fixed ``a > 1``.

    ``threshold`` is ``L/M``; the certificate applies to ``vdW(n, k)``
    whenever ``k >= threshold`` and ``k < n <= (a + 1) * k``.
    """

    a: int
    L: int
    factorization: dict[int, int]
    M: int
    M_prime: int
    threshold: Fraction

    def applies(self, n: int, k: int) -> bool:
        return k >= self.threshold and k < n <= (self.a + 1) * k

    def check(self) -> list[str]:
        """Return the list of violated invariants (empty when consistent)."""
        bad = []
        if self.L != lcm_up_to(self.a):
            bad.append("L != lcm(1..a)")
        if self.L % self.M:
            bad.append("M does not divide L")
        if self.M_prime not in (2, 3):
            bad.append(f"M is a power of {self.M_prime}, expected 2 or 3")
        if not (Fraction(self.a, 4) < self.M <= Fraction(self.a, 2)):
            bad.append("a/4 < M <= a/2 fails")
        return bad


@lru_cache(maxsize=None)
def bound_certificate(a: int) -> BoundCertificate:
    if a <= 1:
        raise DomainError(f"bound certificate needs a > 1, got {a}")
    fac = {}
    for p in primes_up_to(a):
        e, q = 0, 1
        while q * p <= a:
            q *= p
            e += 1
        fac[p] = e
    L = math.prod(p**e for p, e in fac.items())
    # max of p^(alpha-1); ties broken toward the smaller prime
    M, M_prime = max((p ** (e - 1), -p) for p, e in fac.items())
    return BoundCertificate(
        a=a,
        L=L,
        factorization=fac,
        M=M,
        M_prime=-M_prime,
        threshold=Fraction(L, M),
    )


def contractible_by_theorem(n: int, k: int, sharpen: bool = False) -> int | None:
    """Largest ``a > 1`` certifying that ``vdW(n, k)`` is contractible.

    The search takes the largest ``a`` with ``k >= L(a)/M(a)`` and then
    requires ``k < n <= (a + 1) * k``.  Complexes with ``n <= k`` have no
    edges and are excluded (they are discrete point sets).  With
    ``sharpen=True`` the range is widened to ``(a + 2) * k`` when ``a + 1``
    is not a prime power; for the largest such ``a`` that never happens,
    because ``L/M`` would not change between ``a`` and ``a + 1``.
    """
    if n < 1 or k < 1:
        raise DomainError(f"need n, k >= 1, got n={n}, k={k}")
    if k < bound_certificate(2).threshold:
        return None
    a = 2
    while k >= bound_certificate(a + 1).threshold:
        a += 1
    upper = (a + 1) * k
    if sharpen and not is_prime_power(a + 1):
        upper = (a + 2) * k
    if k < n <= upper:
        return a
    return None


def lm_monotone_check(a_max: int) -> bool:
    """``L(a)/M(a) <= L(a+1)/M(a+1)`` for every ``2 <= a < a_max``."""
    if a_max < 2:
        raise DomainError(f"a_max must be >= 2, got {a_max}")
    th = [bound_certificate(a).threshold for a in range(2, a_max + 1)]
    return all(x <= y for x, y in zip(th, th[1:]))


def asymptotic_ratio(k: int) -> float:
    """``r(k) * log log k / log k`` with natural logarithms."""
    if k < 3:
        raise DomainError(f"asymptotic ratio needs k >= 3, got {k}")
    return r_of_k(k) * math.log(math.log(k)) / math.log(k)
