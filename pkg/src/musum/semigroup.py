"""Ordered enumeration of the multiplicative semigroup generated by a prime
set, with Mobius values.

For a prime set P, the semigroup <P> is the set of natural numbers all of
whose prime factors lie in P; it always contains 1 (the empty product).  Two
independent backends produce the stream (n, mu(n)) in strictly increasing n:

* ``sieve`` builds a smallest-prime-factor table up to x and derives
  membership and mu in a single pass over 1..x;
* ``heap``  (finite P only) generalises the classic merge generation of
  Hamming numbers: each member is extended by generators whose index is at
  least the largest one already used, so every member appears exactly once.

The two backends exist to cross-validate each other; tests require their
streams to be identical.
"""

from __future__ import annotations

import heapq
import math
from array import array
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import DomainError, ResourceError, UsageError
from .primes import FinitePrimes, PrimeSetSpec, _member

# Enumeration refuses to build factor tables beyond this point (~800 MB).
MAX_ENUM_LIMIT = 10**8

# auto backend: the heap is memory-light for sparse semigroups, the sieve is
# cache-efficient for dense ones.
_AUTO_HEAP_MAX_PRIMES = 8
_AUTO_HEAP_MIN_X = 10**6


@dataclass(frozen=True)
class SemigroupTerm:
    n: int
    mu: int


@dataclass(frozen=True)
class EnumerationOptions:
    squarefree_only: bool = False
    backend: str = "auto"  # sieve | heap | auto


def mobius(n: int) -> int:
    """Classical Mobius function: 0 if a square divides n, else (-1)**(number
    of distinct prime factors); mobius(1) = 1."""
    if n < 1:
        raise DomainError(f"mobius is defined for n >= 1, got {n}")
    result = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1 if d == 2 else 2
    if m > 1:
        result = -result
    return result


def _smallest_factor_table(x: int) -> array:
    """spf[n] = smallest prime factor of n for 2 <= n <= x (spf[n] == n marks
    primes)."""
    spf = array("q", range(x + 1))
    for p in range(2, math.isqrt(x) + 1):
        if spf[p] == p:
            for m in range(p * p, x + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def _sieve_stream(
    member: Callable[[int], bool], x: int, squarefree_only: bool
) -> Iterator[SemigroupTerm]:
    """One pass over 1..x deriving membership and mu from the factor table."""
    if x >= 1:
        yield SemigroupTerm(1, 1)
    if x < 2:
        return
    spf = _smallest_factor_table(x)
    in_set = bytearray(x + 1)
    for p in range(2, x + 1):
        if spf[p] == p:
            in_set[p] = member(p)
    for n in range(2, x + 1):
        m = n
        mu = 1
        while m > 1:
            p = spf[m]
            if not in_set[p]:
                mu = 2  # sentinel: some factor lies outside P
                break
            m //= p
            if m % p == 0:
                mu = 0
                while m % p == 0:
                    m //= p
            else:
                mu = -mu
        if mu == 2 or (squarefree_only and mu == 0):
            continue
        yield SemigroupTerm(n, mu)


def _heap_stream(primes: tuple[int, ...], x: int, squarefree_only: bool) -> Iterator[SemigroupTerm]:
    """Merge generation for finite P: pop the smallest member, extend it by
    generators with index >= the largest index already used."""
    if x >= 1:
        yield SemigroupTerm(1, 1)
    gens = [p for p in primes if p <= x]
    heap = [(p, i, -1) for i, p in enumerate(gens)]
    heapq.heapify(heap)
    while heap:
        n, i, mu = heapq.heappop(heap)
        yield SemigroupTerm(n, mu)
        start = i + 1 if squarefree_only else i
        for j in range(start, len(gens)):
            m = n * gens[j]
            if m > x:
                break
            heapq.heappush(heap, (m, j, 0 if j == i else -mu))


def _resolve_backend(spec: PrimeSetSpec, x: int, backend: str) -> str:
    if backend == "heap":
        if not isinstance(spec, FinitePrimes):
            raise UsageError("the heap backend requires a finite prime set")
        return "heap"
    if backend == "sieve":
        return "sieve"
    if backend == "auto":
        if (
            isinstance(spec, FinitePrimes)
            and len(spec.primes) <= _AUTO_HEAP_MAX_PRIMES
            and x > _AUTO_HEAP_MIN_X
        ):
            return "heap"
        return "sieve"
    raise UsageError(f"unknown backend {backend!r} (expected sieve, heap or auto)")


def enumerate_terms(
    spec: PrimeSetSpec, x: int, options: EnumerationOptions = EnumerationOptions()
) -> Iterator[SemigroupTerm]:
    """Yield every n in <P> with n <= x exactly once, in strictly increasing
    order, paired with mu(n).  With squarefree_only, mu == 0 terms are
    omitted.  x = 0 yields an empty stream."""
    if x < 0:
        raise DomainError(f"enumeration bound must be >= 0, got {x}")
    if x > MAX_ENUM_LIMIT:
        raise ResourceError(
            f"enumeration up to {x} exceeds the configured ceiling {MAX_ENUM_LIMIT}"
        )
    backend = _resolve_backend(spec, x, options.backend)
    if backend == "heap":
        assert isinstance(spec, FinitePrimes)
        return _heap_stream(spec.primes, x, options.squarefree_only)
    return _sieve_stream(lambda p: _member(spec, p), x, options.squarefree_only)


def _squarefree_terms(spec: PrimeSetSpec, x: int) -> Iterator[SemigroupTerm]:
    """Nonzero-mu members of <P> up to x, ascending; finite sets skip the
    sieve since they have at most 2**|P| squarefree members."""
    if isinstance(spec, FinitePrimes):
        return _heap_stream(spec.primes, x, True)
    return _sieve_stream(lambda p: _member(spec, p), x, True)


def count_members(spec: PrimeSetSpec, x: int) -> int:
    """#{n <= x : n in <P>}."""
    return sum(1 for _ in enumerate_terms(spec, x))


def count_members_outside(spec: PrimeSetSpec, x: int) -> int:
    """#{n <= x : every prime factor of n lies outside P} -- the size of the
    complementary semigroup <P'> up to x, computed from the complement
    membership predicate directly rather than by subtraction."""
    if x < 0:
        raise DomainError(f"enumeration bound must be >= 0, got {x}")
    if x > MAX_ENUM_LIMIT:
        raise ResourceError(
            f"enumeration up to {x} exceeds the configured ceiling {MAX_ENUM_LIMIT}"
        )
    return sum(1 for _ in _sieve_stream(lambda p: not _member(spec, p), x, False))


def density(spec: PrimeSetSpec, x: int) -> float:
    """count_members(spec, x) / x."""
    if x < 1:
        raise DomainError(f"density requires x >= 1, got {x}")
    return count_members(spec, x) / x
