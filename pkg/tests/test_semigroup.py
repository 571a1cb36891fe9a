import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from musum.errors import DomainError, UsageError
from musum.primes import AllPrimes, CofinitePrimes, FinitePrimes, IntervalPrimes
from musum.semigroup import (
    EnumerationOptions,
    SemigroupTerm,
    count_members,
    count_members_outside,
    density,
    enumerate_terms,
    mobius,
)

from oracles import mobius_bruteforce, semigroup_members


class TestMobius:
    def test_unit(self):
        assert mobius(1) == 1

    def test_three_distinct_primes(self):
        assert mobius(30) == -1

    def test_square_factor(self):
        assert mobius(12) == 0

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            mobius(0)

    def test_against_bruteforce(self):
        for n in range(1, 3000):
            assert mobius(n) == mobius_bruteforce(n)

    def test_multiplicative_on_coprime_pairs(self):
        rng = random.Random(20240901)
        checked = 0
        while checked < 10**4:
            m = rng.randrange(1, 10**5)
            n = rng.randrange(1, 10**5)
            if math.gcd(m, n) == 1:
                # Factorising m*n outright is affordable up to ~1e6.
                if m * n <= 10**6:
                    assert mobius(m * n) == mobius(m) * mobius(n)
            else:
                # A shared prime forces a square divisor of the product.
                assert mobius(m * n) == 0
            checked += 1
        # Spot checks across the full range, where m*n approaches 1e10.
        for _ in range(200):
            m = rng.randrange(1, 10**5)
            n = rng.randrange(1, 10**5)
            if math.gcd(m, n) == 1:
                assert mobius(m * n) == mobius(m) * mobius(n)


def _stream(spec, x, **kw):
    return [(t.n, t.mu) for t in enumerate_terms(spec, x, EnumerationOptions(**kw))]


class TestEnumerate:
    def test_two_three_semigroup(self):
        expected = [(1, 1), (2, -1), (3, -1), (4, 0), (6, 1), (8, 0), (9, 0)]
        assert _stream(FinitePrimes((2, 3)), 10) == expected
        assert _stream(FinitePrimes((2, 3)), 10, backend="heap") == expected
        assert _stream(FinitePrimes((2, 3)), 10, backend="sieve") == expected

    def test_all_primes_up_to_five(self):
        assert _stream(AllPrimes(), 5) == [(1, 1), (2, -1), (3, -1), (4, 0), (5, -1)]

    def test_empty_generating_set(self):
        assert _stream(FinitePrimes(()), 10) == [(1, 1)]

    def test_x_zero_is_empty(self):
        assert _stream(AllPrimes(), 0) == []

    def test_first_term_is_one(self):
        for spec in (AllPrimes(), FinitePrimes((5,)), CofinitePrimes((2,))):
            assert _stream(spec, 1) == [(1, 1)]

    def test_squarefree_only_drops_zero_terms(self):
        terms = _stream(FinitePrimes((2, 3)), 30, squarefree_only=True)
        assert terms == [(1, 1), (2, -1), (3, -1), (6, 1)]

    def test_heap_requires_finite(self):
        with pytest.raises(UsageError):
            list(enumerate_terms(AllPrimes(), 10, EnumerationOptions(backend="heap")))

    def test_against_bruteforce_oracle(self):
        spec = CofinitePrimes((2, 5))
        got = _stream(spec, 200)
        want = semigroup_members(lambda p: p not in (2, 5), 200)
        assert got == want

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.sampled_from((2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)),
                 max_size=5),
        st.integers(min_value=0, max_value=10**4),
    )
    def test_backend_oracle_equivalence(self, primes, x):
        spec = FinitePrimes(tuple(primes))
        sieve = _stream(spec, x, backend="sieve")
        heap = _stream(spec, x, backend="heap")
        assert sieve == heap

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.sampled_from((2, 3, 5, 7, 11, 13)), min_size=1, max_size=4),
        st.integers(min_value=1, max_value=5000),
    )
    def test_stream_strictly_increasing(self, primes, x):
        ns = [t.n for t in enumerate_terms(FinitePrimes(tuple(primes)), x)]
        assert ns[0] == 1
        assert all(a < b for a, b in zip(ns, ns[1:]))

    def test_semigroup_and_complement_overlap_only_at_one(self):
        rng = random.Random(7)
        pool = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
        for _ in range(10):
            spec = FinitePrimes(tuple(rng.sample(pool, rng.randrange(1, 6))))
            inside = {t.n for t in enumerate_terms(spec, 10**4)}
            banned = set(spec.primes)
            outside = {
                n
                for n, _ in semigroup_members(lambda p: p not in banned, 10**4)
            }
            assert inside & outside == {1}


class TestCounts:
    def test_powers_of_two(self):
        assert count_members(FinitePrimes((2,)), 1024) == 11

    def test_all_counts_everything(self):
        for x in (1, 17, 300):
            assert count_members(AllPrimes(), x) == x

    def test_empty_set(self):
        assert count_members(FinitePrimes(()), 7) == 1

    def test_density_all(self):
        assert density(AllPrimes(), 100) == 1.0

    def test_density_powers_of_two(self):
        assert density(FinitePrimes((2,)), 1024) == 11 / 1024

    def test_density_decreases_for_interval_set(self):
        spec = IntervalPrimes(10.0, 100.0)
        assert density(spec, 10**6) < density(spec, 10**4)

    def test_complement_count(self):
        # Complement of {2,3}: members <= 10 are 1, 5, 7.
        assert count_members_outside(FinitePrimes((2, 3)), 10) == 3
        # Complement of the full prime set is the trivial semigroup {1}.
        assert count_members_outside(AllPrimes(), 57) == 1
