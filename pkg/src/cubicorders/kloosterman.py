"""Local and global Kloosterman-type sums K(n, f).

For a local prime q the sum is

    K_q(q^v, q^r) = sum over (a, b) mod q^(v+2r) of
                    sum over overorders R of index q^r of
                    sum_{t<=v} q^t a_R(q^t) W_R(q^(v-t)),

and only the splitting type of R at q matters.  The census kernel counts
overorders by type; the weights come from :func:`cubic.local_weight`.

``c`` is always the constant of X^3 - aX^2 + bX - c (a SignedConstant or
an int).  Results are exact Python ints.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernel
from .arith import ParameterError, divisors, factorize, require_prime, valuation
from .cubic import (TABLE_MAX_PRIME, Matrix2, SignedConstant, SplittingType,
                    classify_forms, local_weight, type_table, w_coefficient,
                    _compose)

DEFAULT_PAIR_BUDGET = 3 * 10**8


class ResourceError(RuntimeError):
    """The requested sum exceeds the configured pair budget."""

    def __init__(self, message, pairs=None):
        super().__init__(message)
        self.pairs = pairs


@dataclass(frozen=True, order=True)
class LocalKey:
    q: int
    v: int
    r: int
    p: int
    k: int
    sign: int = 1

    def __post_init__(self):
        require_prime(self.q)
        if self.v < 0 or self.r < 0:
            raise ParameterError("v and r must be non-negative")

    @property
    def constant(self) -> SignedConstant:
        return SignedConstant(self.p, self.k, self.sign)

    @property
    def label(self) -> str:
        return f"K_{self.q}({self.q}^{self.v},{self.q}^{self.r})"


def _check_budget(pairs, budget, what):
    if pairs > budget:
        raise ResourceError(f"{what} needs {pairs} (a, b) pairs, budget is {budget}", pairs)


def _split(n, parts):
    step = -(-n // parts)
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)]


def _census_chunk(args):
    return kernel.census(*args)


def _census(q, c, r, M, classify, workers=1, only_beta=-1):
    """Kernel census over (a, b) mod q^M, split over a-ranges when workers > 1."""
    c %= q**M
    return list(_census_cached(q, c, r, M, classify, max(1, int(workers)), only_beta))


@lru_cache(maxsize=4096)
def _census_cached(q, c, r, M, classify, workers, only_beta):
    if q > TABLE_MAX_PRIME and classify:
        if r != 0:
            raise ResourceError(f"no type table for q={q} with r={r}")
        return tuple(_monic_census(q, c))
    table = type_table(q) if classify else b""
    Q = q**M
    if workers == 1 or Q < 2 * workers:
        return tuple(kernel.census(q, c, r, M, table, 0, Q, only_beta=only_beta))
    jobs = [(q, c, r, M, table, lo, hi, None, only_beta) for lo, hi in _split(Q, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_census_chunk, jobs))
    # integer sums are order independent, so the split never shows up
    return tuple(sum(col) for col in zip(*parts))


def _monic_census(q, c):
    """Type census of X^3 - aX^2 + bX - c over (a, b) mod q, for large q."""
    a = np.arange(q, dtype=np.int64)[:, None]
    b = np.arange(q, dtype=np.int64)[None, :]
    one = np.ones((q, q), dtype=np.int64)
    types = classify_forms(one, -a * one, b * one, -c * one, q)
    return [int(x) for x in np.bincount(types.ravel(), minlength=6)[:6]]


def _weighted(counts, q, v):
    return sum(n * local_weight(SplittingType(t), v, q) for t, n in enumerate(counts))


def local_K(key: LocalKey, budget=DEFAULT_PAIR_BUDGET, workers=1) -> int:
    """K_q(q^v, q^r) by iterating (a, b) mod q^(v+2r)."""
    q, v, r = key.q, key.v, key.r
    c = key.constant.value
    M = v + 2 * r
    _check_budget(q ** (2 * M), budget, key.label)
    if v == 0:
        # W_R(1) = 1 and a_R(1) = 1: the sum counts overorders
        return _census(q, c, r, M, False, workers)[0]
    return _weighted(_census(q, c, r, M, True, workers), q, v)


def local_K_reduced(key: LocalKey, budget=DEFAULT_PAIR_BUDGET, workers=1) -> int:
    """K_q(q^v, q^r) for v >= 1 from (a, b) mod q^(2r+1).

    The transformed form mod q only sees (a, b) mod q^(2r+1), so the full
    sum is q^(2(v-1)) copies of the reduced one.
    """
    q, v, r = key.q, key.v, key.r
    if v < 1:
        raise ParameterError("the reduced path needs v >= 1")
    M = 2 * r + 1
    _check_budget(q ** (2 * M), budget, key.label + " (reduced)")
    counts = _census(q, key.constant.value, r, M, True, workers)
    return q ** (2 * (v - 1)) * _weighted(counts, q, v)


def kloosterman_value(key: LocalKey, budget=DEFAULT_PAIR_BUDGET, workers=1) -> int:
    """Default route: full modulus for v <= 1, reduced modulus for v >= 2."""
    if key.v >= 2:
        return local_K_reduced(key, budget, workers)
    return local_K(key, budget, workers)


def stratified_census(key: LocalKey, beta: int, budget=DEFAULT_PAIR_BUDGET) -> dict:
    """Overorders of one beta stratum counted by splitting type, over (a, b) mod q^(v+2r)."""
    q, v, r = key.q, key.v, key.r
    if 3 * beta > r:
        raise ParameterError("need 3*beta <= r")
    M = 2 * r + 1
    _check_budget(q ** (2 * M), budget, key.label)
    counts = kernel.census(q, key.constant.value % q**M, r, M, type_table(q),
                           only_beta=beta)
    # the solution set lives mod q^(2r) and the types mod q^(2r+1)
    e = 2 * (v + 2 * r - M)
    if e >= 0:
        return {SplittingType(t): n * q**e for t, n in enumerate(counts)}
    return {SplittingType(t): n // q**-e for t, n in enumerate(counts)}


def kloosterman_table(q, c: SignedConstant, vmax, rmax, budget=DEFAULT_PAIR_BUDGET,
                      workers=1) -> dict:
    """{(v, r): K or ResourceError} on the grid v <= vmax, r <= rmax."""
    out = {}
    for r in range(rmax + 1):
        for v in range(vmax + 1):
            key = LocalKey(q, v, r, c.p, c.k, c.sign)
            try:
                out[(v, r)] = kloosterman_value(key, budget, workers)
            except ResourceError as exc:
                out[(v, r)] = exc
    return out


def global_K(n: int, f: int, c: SignedConstant, budget=DEFAULT_PAIR_BUDGET, workers=1) -> int:
    """K(n, f) as the product of local sums over primes dividing n f."""
    if n < 1 or f < 1:
        raise ParameterError("n and f must be positive")
    total = 1
    for q in sorted(factorize(n * f)):
        v = 0 if n % q else valuation(n, q)
        r = 0 if f % q else valuation(f, q)
        total *= kloosterman_value(LocalKey(q, v, r, c.p, c.k, c.sign), budget, workers)
    return total


def hnf_reps(f: int) -> list:
    """Lower-triangular [[d1, 0], [u, d2]] with d1 d2 = f and 0 <= u < d2."""
    return [Matrix2(d1, 0, u, f // d1) for d1 in divisors(f) for u in range(f // d1)]


def _overorder_forms(a, b, c, f):
    """Yield (mask, [c3, c2, c1, c0]) per index-f coset, on arrays of (a, b)."""
    for g in hnf_reps(f):
        adj = g.adjugate()
        base = _compose((1, 0, 0, -c), adj)
        da = _compose((0, -1, 0, 0), adj)
        db = _compose((0, 0, 1, 0), adj)
        coeffs = [base[i] + da[i] * a + db[i] * b for i in range(4)]
        d2 = g.det**2
        mask = np.ones(np.broadcast(a, b).shape, dtype=bool)
        for x in coeffs:
            mask &= x % d2 == 0
        yield mask, [x // d2 for x in coeffs]


def _divisor_sum(forms, n, q_list):
    """sum_{d | n} d a_R(d) W_R(n/d) with a_R and W_R multiplicative."""
    types = {q: classify_forms(*forms, q) for q in q_list}
    zero = {q: types[q] == SplittingType.Zero for q in q_list}
    total = 0
    for d in divisors(n):
        term = np.full(forms[0].shape, d, dtype=np.int64)
        for q in q_list:
            s, e = valuation(d, q), valuation(n // d, q)
            if s >= 2:
                term[:] = 0
                break
            if s == 1:
                term *= zero[q]
            w = np.array([w_coefficient(SplittingType(t), e) for t in range(6)],
                         dtype=np.int64)
            term *= w[types[q]]
        total = total + term
    return total


def inner_sums(a, b, n: int, f: int, c) -> np.ndarray:
    """sum over index-f overorders R of sum_{d|n} d a_R(d) W_R(n/d), per (a, b)."""
    c = c.value if isinstance(c, SignedConstant) else int(c)
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    q_list = sorted(factorize(n))
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for mask, forms in _overorder_forms(a, b, c, f):
        if not mask.any():
            continue
        forms = [np.broadcast_to(x, mask.shape)[mask] for x in forms]
        out[mask] += _divisor_sum(forms, n, q_list)
    return out


def global_K_direct(n: int, f: int, c: SignedConstant, budget=DEFAULT_PAIR_BUDGET) -> int:
    """K(n, f) straight from the definition over (a, b) mod n f^2.

    Overorders of index f come from a scan of all lower-triangular cosets of
    determinant f, and a_R, W_R are evaluated as multiplicative functions.
    """
    if n < 1 or f < 1:
        raise ParameterError("n and f must be positive")
    N = n * f * f
    _check_budget(N * N, budget, f"K({n},{f}) direct")
    grid = np.arange(N, dtype=np.int64)
    return int(inner_sums(grid[:, None], grid[None, :], n, f, c).sum())


def periodicity_check(n: int, f: int, c: SignedConstant, m: int = 2,
                      budget=DEFAULT_PAIR_BUDGET) -> bool:
    """Inner sums are constant on each class mod n f^2 across m x m lifts."""
    if m < 2:
        raise ParameterError("multiplier must be at least 2")
    N = n * f * f
    _check_budget((N * m) ** 2, budget, f"periodicity ({n},{f})")
    base = np.arange(N, dtype=np.int64)
    ref = inner_sums(base[:, None], base[None, :], n, f, c)
    for i in range(m):
        for j in range(m):
            lifted = inner_sums(base[:, None] + N * i, base[None, :] + N * j, n, f, c)
            if not np.array_equal(lifted, ref):
                return False
    return True


def resolve_workers(workers=None) -> int:
    """Worker count from the argument, then CUBICORDERS_WORKERS, then the CPU count."""
    if workers is None:
        workers = os.environ.get("CUBICORDERS_WORKERS") or os.cpu_count() or 1
    workers = int(workers)
    if workers < 1:
        raise ParameterError("workers must be positive")
    return workers


def clear_cache():
    _census_cached.cache_clear()
