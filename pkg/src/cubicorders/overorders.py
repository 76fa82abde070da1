"""Overorders of index q^r of the monogenic order R(a, b).

Two independent routes:

* :func:`solve_system` / :func:`enumerate_overorders` solve the three
  congruences in the rescaled coset parameter (beta, u);
* :func:`oracle_enumerate` scans every lower-triangular coset representative
  of determinant q^r and keeps those whose transformed form is integral.

Throughout, ``c`` is the constant of X^3 - aX^2 + bX - c and the third
congruence reads ``u^3 + a u^2 + b u + c = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import ParameterError, require_prime
from .cubic import BinaryCubicForm, Matrix2, _compose, act, constant_value


class PrecisionError(ParameterError):
    """(a, b) were supplied modulo too small a power of q."""


class ConsistencyError(AssertionError):
    """A claimed overorder failed to produce an integral form."""


@dataclass(frozen=True, order=True)
class CosetRep:
    beta: int
    u: int
    r: int

    def __post_init__(self):
        if 3 * self.beta > self.r or self.beta < 0:
            raise ParameterError(f"need 0 <= 3*beta <= r, got beta={self.beta}, r={self.r}")

    def matrix(self, q: int) -> Matrix2:
        """g = [[q^beta, 0], [u q^beta, q^(r-beta)]]."""
        qb = q**self.beta
        return Matrix2(qb, 0, self.u * qb, q ** (self.r - self.beta))


@dataclass(frozen=True)
class Overorder:
    parent: BinaryCubicForm
    rep: CosetRep
    form: BinaryCubicForm
    q: int

    @property
    def index(self) -> int:
        return self.q**self.rep.r


def coset_reps(q: int, r: int) -> list:
    """All [[q^b, 0], [u, q^(r-b)]] with 0 <= b <= r and 0 <= u < q^(r-b)."""
    require_prime(q)
    if r < 0:
        raise ParameterError("r must be non-negative")
    return [Matrix2(q**b, 0, u, q ** (r - b))
            for b in range(r + 1) for u in range(q ** (r - b))]


def canonical_rep(g: Matrix2, q: int) -> CosetRep:
    """Rewrite a lower-triangular representative in (beta, rescaled u) form."""
    if g.b != 0:
        raise ParameterError(f"{g} is not lower triangular")
    beta = _exponent(g.a, q)
    r = beta + _exponent(g.d, q)
    if 3 * beta > r or g.c % q**beta:
        raise ParameterError(f"{g} does not have the shape of an overorder")
    return CosetRep(beta, (g.c // q**beta) % q ** (r - 2 * beta), r)


def _exponent(n, q):
    e = 0
    while n % q == 0 and n > 1:
        n //= q
        e += 1
    if n != 1:
        raise ParameterError(f"{n} is not a power of {q}")
    return e


def system_holds(a: int, b: int, c: int, q: int, beta: int, u: int, r: int) -> bool:
    return ((a + 3 * u) % q**beta == 0
            and (3 * u * u + 2 * a * u + b) % q ** (r - beta) == 0
            and (u**3 + a * u * u + b * u + c) % q ** (2 * r - 3 * beta) == 0)


def solve_system(a: int, b: int, c, q: int, r: int, precision=None) -> list:
    """All CosetReps (beta, u) solving the overorder congruences.

    ``precision`` is the exponent M when (a, b) are only known mod q^M;
    None means they are exact integers.
    """
    require_prime(q)
    if r < 0:
        raise ParameterError("r must be non-negative")
    if precision is not None and precision < 2 * r:
        raise PrecisionError(f"(a, b) known mod {q}^{precision}, need {q}^{2 * r}")
    c = constant_value(c)
    out = []
    for beta in range(r // 3 + 1):
        # r >= 3 beta keeps the u-modulus positive for r >= 1
        assert r == 0 or r - 2 * beta >= 1
        for u in range(q ** (r - 2 * beta)):
            if system_holds(a, b, c, q, beta, u, r):
                out.append(CosetRep(beta, u, r))
    return out


def transformed_form(a: int, b: int, c, q: int, rep: CosetRep) -> BinaryCubicForm:
    """Closed-form coefficients of f^g for a solution of the system."""
    c = constant_value(c)
    beta, u, r = rep.beta, rep.u, rep.r
    n2, n1, n0 = a + 3 * u, 3 * u * u + 2 * a * u + b, u**3 + a * u * u + b * u + c
    d2, d1, d0 = q**beta, q ** (r - beta), q ** (2 * r - 3 * beta)
    if n2 % d2 or n1 % d1 or n0 % d0:
        raise ConsistencyError(f"{rep} does not solve the system for {(a, b, c)}")
    return BinaryCubicForm(q ** (r - 3 * beta), -(n2 // d2), n1 // d1, -(n0 // d0))


def enumerate_overorders(f: BinaryCubicForm, c, q: int, r: int) -> list:
    """Overorders of index q^r of R(f), via the congruence system."""
    a, b = _params(f, c)
    out = []
    for rep in solve_system(a, b, c, q, r):
        g = act(f, rep.matrix(q))
        if not g.is_integral():
            raise ConsistencyError(f"solution {rep} gives non-integral {g}")
        out.append(Overorder(f, rep, g.integral(), q))
    return out


def oracle_enumerate(f: BinaryCubicForm, c, q: int, r: int) -> list:
    """Overorders of index q^r by scanning all coset representatives."""
    _params(f, c)
    out = []
    for g, d2 in _oracle_reps(q, r):
        if _integral_on(f, g, d2):
            out.append(Overorder(f, canonical_rep(g, q), act(f, g).integral(), q))
    return out


def _integral_on(f, g, d2):
    """Is f o adj(g) divisible by det(g)^2?  g is lower triangular.

    Same test as ``act(f, g).is_integral()`` in integers, stopping at the
    first coefficient that fails.
    """
    c3, c2, c1, c0 = f.coefficients
    # adj(g) = [[d, 0], [-u, a]]: (x, y) adj(g) = (d x - u y, a y)
    d, w, a = g.d, -g.c, g.a
    if (c3 * d**3) % d2:
        return False
    if (d * d * (3 * c3 * w + c2 * a)) % d2:
        return False
    if (d * (3 * c3 * w * w + 2 * c2 * w * a + c1 * a * a)) % d2:
        return False
    return (c3 * w**3 + c2 * w * w * a + c1 * w * a * a + c0 * a**3) % d2 == 0


@lru_cache(maxsize=64)
def _oracle_reps(q, r):
    return tuple((g, g.det**2) for g in coset_reps(q, r))


def _params(f: BinaryCubicForm, c):
    if f.c3 != 1 or f.c0 != -constant_value(c):
        raise ParameterError(f"{f} is not the monogenic form with constant {c}")
    return -f.c2, f.c1



def system_reps(q: int, r: int) -> list:
    """Every CosetRep of level r, in a fixed order."""
    return [CosetRep(beta, u, r) for beta in range(r // 3 + 1)
            for u in range(q ** (r - 2 * beta))]


def _grid(q, r):
    n = q ** (2 * r)
    a = np.arange(n, dtype=np.int64)[:, None]
    b = np.arange(n, dtype=np.int64)[None, :]
    return a, b


def system_solution_table(c, q: int, r: int):
    """Boolean array [rep, a, b] over (a, b) mod q^(2r), from the congruences."""
    require_prime(q)
    c = constant_value(c) % q ** (2 * r)
    a, b = _grid(q, r)
    reps = system_reps(q, r)
    out = np.zeros((len(reps), a.shape[0], b.shape[1]), dtype=bool)
    for i, rep in enumerate(reps):
        beta, u = rep.beta, rep.u
        out[i] = (((a + 3 * u) % q**beta == 0)
                  & ((3 * u * u + 2 * a * u + b) % q ** (r - beta) == 0)
                  & ((u**3 + a * u * u + b * u + c) % q ** (2 * r - 3 * beta) == 0))
    return out


def oracle_solution_table(c, q: int, r: int):
    """Same shape as :func:`system_solution_table`, from the coset scan.

    f o adj(g) is linear in the coefficients of f, so each coset
    representative is tested on the whole (a, b) grid at once.  A form that
    is integral on a representative outside the (beta, u) shape raises
    ConsistencyError.
    """
    require_prime(q)
    c = constant_value(c)
    a, b = _grid(q, r)
    reps = system_reps(q, r)
    index = {rep: i for i, rep in enumerate(reps)}
    out = np.zeros((len(reps), a.shape[0], b.shape[1]), dtype=bool)
    for g in coset_reps(q, r):
        adj = g.adjugate()
        const = _compose((1, 0, 0, -c), adj)
        da = _compose((0, -1, 0, 0), adj)
        db = _compose((0, 0, 1, 0), adj)
        d2 = g.det**2
        ok = np.ones((a.shape[0], b.shape[1]), dtype=bool)
        for k in range(4):
            ok &= (const[k] + da[k] * a + db[k] * b) % d2 == 0
        if not ok.any():
            continue
        try:
            rep = canonical_rep(g, q)
        except ParameterError:
            raise ConsistencyError(f"integral form on the non-overorder coset {g}")
        out[index[rep]] |= ok
    return out
