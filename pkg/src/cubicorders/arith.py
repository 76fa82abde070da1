"""Exact integer, modular and valuation primitives.

Everything here works on Python ints, so moduli of any size are safe.
"""
import math
from functools import lru_cache

INFINITY = math.inf


class ParameterError(ValueError):
    """Raised when an argument violates a documented precondition."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale primes."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(q: int) -> None:
    if not is_prime(q):
        raise ParameterError(f"{q} is not prime")


def valuation(m: int, q: int):
    """Return the exact q-adic valuation of ``m``; ``INFINITY`` when m == 0."""
    require_prime(q)
    if m == 0:
        return INFINITY
    m = abs(m)
    e = 0
    while m % q == 0:
        m //= q
        e += 1
    return e


def factorize(n: int) -> dict:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ParameterError("factorize expects a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def cube_root_count(q: int, c: int) -> int:
    """Number of r in F_q with r^3 = c, by enumeration of the field."""
    require_prime(q)
    c %= q
    return sum(1 for r in range(q) if pow(r, 3, q) == c)


def hensel_cube_roots(q: int, c: int, beta: int) -> list:
    """All u mod q**beta with u**3 = c, for a unit c and q != 3.

    Simple roots mod q lift uniquely (Newton iteration on u**3 - c).
    ``q == 3`` is delegated to :func:`cube_roots_mod_3_power`.
    """
    require_prime(q)
    if beta < 0:
        raise ParameterError("precision must be non-negative")
    if c % q == 0:
        raise ParameterError(f"{c} is not a unit mod {q}")
    if q == 3:
        return cube_roots_mod_3_power(c, beta)
    if beta == 0:
        return [0]
    mod = q**beta
    roots = []
    for r in range(q):
        if pow(r, 3, q) != c % q:
            continue
        u, prec = r, 1
        while prec < beta:
            prec = min(2 * prec, beta)
            m = q**prec
            # derivative 3u^2 is a unit since q does not divide 3c
            u = (u - (u**3 - c) * pow(3 * u * u, -1, m)) % m
        roots.append(u % mod)
    return sorted(roots)


def cube_roots_mod_3_power(c: int, beta: int) -> list:
    """Cube roots of a unit c modulo 3**beta, lifted digit by digit.

    The count is 1 for beta == 1; for beta >= 2 it is 3 when c = +-1 (mod 9)
    and 0 otherwise.
    """
    if c % 3 == 0:
        raise ParameterError(f"{c} is not a unit mod 3")
    if beta == 0:
        return [0]
    roots = [r for r in range(3) if pow(r, 3, 3) == c % 3]
    for j in range(1, beta):
        m, step = 3 ** (j + 1), 3**j
        roots = [u + step * t for u in roots for t in range(3)
                 if pow(u + step * t, 3, m) == c % m]
    return sorted(roots)


def delta9(c: int) -> int:
    """1 when c = +-1 (mod 9), else 0."""
    return 1 if c % 9 in (1, 8) else 0
