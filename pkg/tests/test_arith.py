import math

import pytest
from hypothesis import given, strategies as st

from cubicorders.arith import (INFINITY, ParameterError, cube_root_count, cube_roots_mod_3_power,
                               delta9, divisors, factorize, hensel_cube_roots, is_prime,
                               valuation)

PRIMES = [p for p in range(2, 101) if is_prime(p)]


def test_is_prime_matches_sieve():
    sieve = [True] * 200
    sieve[0] = sieve[1] = False
    for i in range(2, 200):
        if sieve[i]:
            for j in range(i * i, 200, i):
                sieve[j] = False
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if sieve[n]]


@pytest.mark.parametrize("m, q, expected", [(0, 5, INFINITY), (45, 3, 2), (-2951, 13, 1)])
def test_valuation_examples(m, q, expected):
    assert valuation(m, q) == expected


def test_valuation_rejects_composite():
    with pytest.raises(ParameterError):
        valuation(12, 4)


@given(st.integers(1, 10**9), st.integers(1, 10**9), st.sampled_from(PRIMES[:10]))
def test_valuation_multiplicative(a, b, q):
    assert valuation(a * b, q) == valuation(a, q) + valuation(b, q)


@given(st.integers(-10**12, 10**12).filter(bool), st.sampled_from(PRIMES[:10]))
def test_valuation_leaves_unit(m, q):
    e = valuation(m, q)
    assert m % q**e == 0 and (m // q**e) % q != 0


@given(st.integers(1, 10**6))
def test_factorize_and_divisors(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac.items()) == n
    assert all(is_prime(p) for p in fac)
    divs = divisors(n)
    assert divs == sorted(d for d in set(divs) if n % d == 0)
    assert len(divs) == math.prod(e + 1 for e in fac.values())


@pytest.mark.parametrize("q, c, expected", [(5, 2, 1), (7, 1, 3), (7, 5, 0)])
def test_cube_root_count_examples(q, c, expected):
    assert cube_root_count(q, c) == expected


@pytest.mark.parametrize("q", PRIMES)
def test_cube_root_count_totals(q):
    counts = [cube_root_count(q, c) for c in range(1, q)]
    assert sum(counts) == q - 1
    if q % 3 == 2:
        assert set(counts) == {1}
    elif q % 3 == 1:
        assert set(counts) <= {0, 3}


def test_hensel_examples():
    assert hensel_cube_roots(5, 2, 1) == [3]
    assert hensel_cube_roots(7, 5, 2) == []
    assert hensel_cube_roots(3, 1, 2) == [1, 4, 7]
    with pytest.raises(ParameterError):
        hensel_cube_roots(5, 10, 2)


@given(st.sampled_from([q for q in PRIMES if q > 3][:8]), st.integers(1, 10**6), st.integers(1, 6))
def test_hensel_roots_cube_back(q, c, beta):
    if c % q == 0:
        return
    roots = hensel_cube_roots(q, c, beta)
    mod = q**beta
    assert all(pow(u, 3, mod) == c % mod for u in roots)
    # simple roots lift uniquely
    assert len(roots) == cube_root_count(q, c)


@given(st.integers(1, 10**6), st.integers(1, 6))
def test_cube_roots_mod_3_power(c, beta):
    if c % 3 == 0:
        return
    roots = cube_roots_mod_3_power(c, beta)
    mod = 3**beta
    assert roots == [u for u in range(mod) if pow(u, 3, mod) == c % mod]
    if beta >= 2:
        assert len(roots) == 3 * delta9(c)
