"""Exact and certified-float partial sums of mu(n)/n over prime-generated
semigroups, together with the bound checks they satisfy.

The central quantity is

    S_P(x) = sum of mu(n)/n over n in <P> with n <= x,

which satisfies |S_P(x)| <= 1 for every prime set P and every x, with
equality at x = 1.  Three restricted variants carry the same bound:

* sum over n <= x coprime to a fixed P        (``partial_sum_coprime``)
* sum over divisors n of a fixed N, n <= x    (``partial_sum_divisors``)
* sum of mu(m*n)/n over n <= x for fixed m    (``partial_sum_shifted``)

and the convexity generalisation to multiplicative weights a: N -> [0, 1]
(``weighted_partial_sum``).  ``zorn_check`` verifies the integer identity
behind the proof of the bound:

    #{n <= x : n in <P'>}  =  sum over d in <P>, d <= x of mu(d)*floor(x/d)

where P' is the complement of P in the primes.

Exact mode accumulates ``fractions.Fraction`` values term by term in
increasing n (reduced at every step); float mode uses ``math.fsum`` over the
same ordering, whose error is far below the documented certificate
``4 * x * ulp(1)``.  Every report carries the bound verdict; a false verdict
means a theorem has been falsified and is escalated by the CLI, never
silently dropped.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, UsageError
from .primes import CofinitePrimes, FinitePrimes, PrimeSetSpec, is_prime, render_spec
from .semigroup import (
    MAX_ENUM_LIMIT,
    _sieve_stream,
    _squarefree_terms,
    count_members_outside,
    mobius,
)

# Exact summation keeps the running value as a reduced fraction whose
# denominator divides lcm(1..x); at x = 1e5 that is ~43000 decimal digits,
# feasible but slow, so exact mode refuses larger x.  Finite prime sets are
# not exempted even though their term count is tiny; the ceiling is a blunt
# contract shared with the CLI.
EXACT_CEILING = 10**5

# One rounding per term, with generous slack; fsum actually stays within one
# ulp of the true rounded value.
FLOAT_ERROR_PER_TERM = 4 * sys.float_info.epsilon

MODES = ("exact", "float")

# A term is (n, num, den) for the contribution num/den at position n; terms
# always arrive ordered by strictly increasing n.
Term = tuple[int, int, int]


@dataclass(frozen=True)
class SumReport:
    """A computed partial sum plus its bound verdict.

    ``value_exact`` is None in float mode.  In exact mode ``value_float`` is
    the rounding of ``value_exact`` and ``float_error_bound`` is 0.  The
    verdict ``bound_ok`` is |value| <= 1, compared exactly in exact mode and
    as |value_float| <= 1 + float_error_bound in float mode.  ``term_count``
    counts the nonzero terms accumulated.
    """

    params: str
    x: int
    mode: str
    value_exact: Fraction | None
    value_float: float
    float_error_bound: float
    term_count: int
    bound_ok: bool


@dataclass(frozen=True)
class ZornIdentity:
    """Both sides of the counting identity behind the |S_P(x)| <= 1 proof."""

    lhs: int
    rhs: int
    equal: bool


def format_rational(q: Fraction) -> str:
    """Serialise as "numerator/denominator" in lowest terms.

    Exact denominators grow to tens of thousands of digits, beyond the
    interpreter's default int-to-str ceiling, so the ceiling is raised first.
    """
    digits = max(q.numerator.bit_length(), q.denominator.bit_length()) // 3 + 10
    if digits > sys.get_int_max_str_digits() > 0:
        sys.set_int_max_str_digits(digits)
    return f"{q.numerator}/{q.denominator}"


def _validate_mode_and_x(mode: str, x: int) -> None:
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r} (expected 'exact' or 'float')")
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if mode == "exact" and x > EXACT_CEILING:
        raise UsageError(
            f"exact mode is limited to x <= {EXACT_CEILING}; use float mode for x = {x}"
        )
    if x > MAX_ENUM_LIMIT:
        raise DomainError(f"x = {x} exceeds the enumeration ceiling {MAX_ENUM_LIMIT}")


def _report(params: str, x: int, mode: str, terms: Iterable[Term]) -> SumReport:
    if mode == "exact":
        total = Fraction(0)
        count = 0
        for _, num, den in terms:
            if num:
                total += Fraction(num, den)
                count += 1
        return SumReport(
            params=params,
            x=x,
            mode=mode,
            value_exact=total,
            value_float=float(total),
            float_error_bound=0.0,
            term_count=count,
            bound_ok=abs(total) <= 1,
        )
    floats = [num / den for _, num, den in terms if num]
    value = math.fsum(floats)
    bound = FLOAT_ERROR_PER_TERM * x
    return SumReport(
        params=params,
        x=x,
        mode=mode,
        value_exact=None,
        value_float=value,
        float_error_bound=bound,
        term_count=len(floats),
        bound_ok=abs(value) <= 1.0 + bound,
    )


def partial_sum(spec: PrimeSetSpec, x: int, mode: str = "exact") -> SumReport:
    """S_P(x) = sum of mu(n)/n over n in <P>, n <= x.

    The report's bound_ok must come back true for every input; the value is
    1 exactly when x = 1 (only the term n = 1 contributes) and it saturates
    at the full product of (1 - 1/p) once x reaches the product of a finite
    generating set.
    """
    _validate_mode_and_x(mode, x)
    terms = ((t.n, t.mu, t.n) for t in _squarefree_terms(spec, x))
    return _report(render_spec(spec), x, mode, terms)


def _mu_stream(x: int) -> Iterator[tuple[int, int]]:
    """(n, mu(n)) for squarefree 1 <= n <= x via the factor-table walk."""
    for t in _sieve_stream(lambda p: True, x, True):
        yield t.n, t.mu


def partial_sum_coprime(P: int, x: int, mode: str = "exact") -> SumReport:
    """Sum of mu(n)/n over n <= x with gcd(n, P) = 1.

    Equals the semigroup sum for the set of primes not dividing P; computed
    here directly from the gcd condition so the two routes stay independent.
    """
    if P < 1:
        raise DomainError(f"coprimality modulus must be >= 1, got {P}")
    _validate_mode_and_x(mode, x)
    terms = ((n, mu, n) for n, mu in _mu_stream(x) if math.gcd(n, P) == 1)
    return _report(f"coprime:P={P}", x, mode, terms)


def _distinct_prime_factors(n: int) -> list[int]:
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def partial_sum_divisors(N: int, x: int, mode: str = "exact") -> SumReport:
    """Sum of mu(n)/n over divisors n of N with n <= x.

    For x >= N this collapses to phi(N)/N by the classical totient identity,
    which tests verify with an independently computed totient.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    _validate_mode_and_x(mode, x)
    divisors = [(1, 1)]
    for p in _distinct_prime_factors(N):
        divisors += [(dv * p, -mu) for dv, mu in divisors]
    terms = ((dv, mu, dv) for dv, mu in sorted(divisors) if dv <= x)
    return _report(f"divisors:N={N}", x, mode, terms)


def partial_sum_shifted(m: int, x: int, mode: str = "exact") -> SumReport:
    """Sum of mu(m*n)/n over n <= x.

    Uses mu(m*n) = mu(m) * mu(n) * [gcd(m, n) = 1]; the brute-force oracle in
    the tests factorises m*n directly instead.  For m = 1 this is the plain
    partial sum over all of N.
    """
    if m < 1:
        raise DomainError(f"shift m must be >= 1, got {m}")
    _validate_mode_and_x(mode, x)
    mu_m = mobius(m)
    if mu_m == 0:
        terms: Iterable[Term] = ()
    else:
        terms = (
            (n, mu_m * mu, n) for n, mu in _mu_stream(x) if math.gcd(n, m) == 1
        )
    return _report(f"shifted:m={m}", x, mode, terms)


def zorn_check(spec: PrimeSetSpec, x: int) -> ZornIdentity:
    """Exact integer identity: the count of the complementary semigroup <P'>
    up to x equals sum over d in <P>, d <= x of mu(d) * floor(x/d).

    Both sides are computed independently: the left by enumerating <P'> from
    the complement membership predicate, the right from the <P> stream.
    """
    if x < 1:
        raise DomainError(f"zorn identity requires x >= 1, got {x}")
    lhs = count_members_outside(spec, x)
    rhs = sum(t.mu * (x // t.n) for t in _squarefree_terms(spec, x))
    return ZornIdentity(lhs=lhs, rhs=rhs, equal=lhs == rhs)


def euler_product(spec: PrimeSetSpec) -> Fraction:
    """Exact product of (1 - 1/p) over a finite prime set; 1 for the empty
    set."""
    if not isinstance(spec, FinitePrimes):
        raise UsageError(
            "euler_product needs a finite prime set; use euler_product_partial "
            "for truncations of infinite sets"
        )
    result = Fraction(1)
    for p in spec.primes:
        result *= Fraction(p - 1, p)
    return result


def euler_product_partial(spec: PrimeSetSpec, prime_limit: int) -> float:
    """Truncated product of (1 - 1/p) over members p <= prime_limit, in
    floating arithmetic; non-increasing in the limit."""
    from .primes import primes_in

    if prime_limit < 0:
        raise DomainError(f"prime limit must be >= 0, got {prime_limit}")
    result = 1.0
    for p in primes_in(spec, prime_limit):
        result *= 1.0 - 1.0 / p
    return result


class WeightFunction:
    """A multiplicative weight a: N -> [0, 1] given by values on finitely
    many primes plus a default (0 or 1) for every other prime; extended to
    squarefree n by a(n) = product of a(p) over p | n, with a(1) = 1."""

    def __init__(self, assignments: Mapping[int, Fraction | int], default_value: int = 0):
        if default_value not in (0, 1):
            raise DomainError(f"default weight must be 0 or 1, got {default_value}")
        cleaned: dict[int, Fraction] = {}
        for p, value in assignments.items():
            if not is_prime(p):
                raise DomainError(f"weights may only be assigned to primes, got {p}")
            w = Fraction(value)
            if not 0 <= w <= 1:
                raise DomainError(f"weight for {p} must lie in [0, 1], got {w}")
            cleaned[p] = w
        self.assignments = cleaned
        self.default_value = default_value

    def __repr__(self):
        pairs = ",".join(f"{p}={w}" for p, w in sorted(self.assignments.items()))
        return f"weights:default={self.default_value};{pairs}"


def _weighted_terms_default_zero(a: WeightFunction, x: int) -> list[Term]:
    # Unassigned primes weigh 0, so only the semigroup generated by the
    # assigned support contributes; walk its squarefree subsets.
    support = sorted(a.assignments)
    found: list[Term] = []

    def extend(idx: int, n: int, weight: Fraction, mu: int):
        found.append((n, mu * weight.numerator, n * weight.denominator))
        for k in range(idx, len(support)):
            p = support[k]
            if n * p > x:
                break
            extend(k + 1, n * p, weight * a.assignments[p], -mu)

    if x >= 1:
        extend(0, 1, Fraction(1), 1)
    found.sort(key=lambda term: term[0])
    return found


def _weighted_terms_default_one(a: WeightFunction, x: int) -> Iterator[Term]:
    # Every squarefree n <= x contributes; only the finitely many assigned
    # primes can scale a term, so divisibility by each of them is checked
    # instead of factorising n.
    assigned = sorted(a.assignments.items())
    for n, mu in _mu_stream(x):
        num, den = mu, n
        for p, w in assigned:
            if n % p == 0:
                num *= w.numerator
                den *= w.denominator
        yield n, num, den


def weighted_partial_sum(a: WeightFunction, x: int, mode: str = "exact") -> SumReport:
    """Sum of mu(n) * a(n) / n over n <= x for a multiplicative weight a.

    With every a(p) in {0, 1} this reproduces the semigroup partial sum for
    the corresponding prime set (the extreme points of the weight cube), and
    the bound |value| <= 1 persists across the whole cube by linearity in
    each a(p).
    """
    _validate_mode_and_x(mode, x)
    if a.default_value == 0:
        terms: Iterable[Term] = _weighted_terms_default_zero(a, x)
    else:
        terms = _weighted_terms_default_one(a, x)
    return _report(repr(a), x, mode, terms)


def spec_of_coprime_modulus(P: int) -> PrimeSetSpec:
    """The prime set {p : p does not divide P} as a cofinite description."""
    if P < 1:
        raise DomainError(f"coprimality modulus must be >= 1, got {P}")
    return CofinitePrimes(tuple(_distinct_prime_factors(P)))
