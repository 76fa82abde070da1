"""Exact rational functions and truncated power series in x = q^(-z).

Everything here is Fraction arithmetic; no floats.  The closed local
factors and the axis identities (r = 0 row, v = 0 column) are encoded as
:class:`RationalFunction` values and compared coefficientwise with series
assembled from Kloosterman sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import ParameterError, cube_root_count, delta9, require_prime
from .cubic import SignedConstant
from .kloosterman import DEFAULT_PAIR_BUDGET, LocalKey, ResourceError, kloosterman_value
from .report import MatchReport


def _trim(coeffs):
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim(coeffs)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, a):
        return cls([a])

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = other.c + (Fraction(0),) * (n - len(other.c))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        quot = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.lead()
        for i in range(len(quot) - 1, -1, -1):
            coef = rem[i + other.degree] / lead
            quot[i] = coef
            if coef:
                for j, y in enumerate(other.c):
                    rem[i + j] -= coef * y
        return Poly(quot), Poly(rem)

    def monic(self):
        return self * (1 / self.lead()) if self.c else self

    def __call__(self, x):
        acc = 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"


def _as_poly(x):
    return x if isinstance(x, Poly) else Poly([x])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if not num.is_zero() else den.monic()
        num, den = num.divmod(g)[0], den.divmod(g)[0]
        scale = 1 / den.lead()
        self.num, self.den = num * scale, den * scale

    def __eq__(self, other):
        other = _as_rf(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def __pow__(self, e):
        return RationalFunction(self.num**e, self.den**e)

    def taylor(self, T: int) -> "PowerSeries":
        """Expansion at x = 0 through x^T."""
        d0 = self.den.c[0] if self.den.c else 0
        if d0 == 0:
            raise ParameterError("pole at x = 0")
        return PowerSeries(self.num.c, T) / PowerSeries(self.den.c, T)

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


def _as_rf(x):
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


X = RationalFunction(Poly.x())


class PowerSeries:
    """Coefficients c_0..c_T of a series truncated after x^T."""

    __slots__ = ("c", "T")

    def __init__(self, coeffs, T: int):
        coeffs = [Fraction(x) for x in list(coeffs)[:T + 1]]
        self.c = tuple(coeffs + [Fraction(0)] * (T + 1 - len(coeffs)))
        self.T = T

    def _same(self, other):
        if isinstance(other, PowerSeries):
            if other.T != self.T:
                raise ParameterError("truncation orders differ")
            return other
        return PowerSeries([other], self.T)

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and self.T == other.T and self.c == other.c

    def __add__(self, other):
        other = self._same(other)
        return PowerSeries([x + y for x, y in zip(self.c, other.c)], self.T)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-x for x in self.c], self.T)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        other = self._same(other)
        out = [Fraction(0)] * (self.T + 1)
        for i, x in enumerate(self.c):
            if x:
                for j in range(self.T + 1 - i):
                    out[i + j] += x * other.c[j]
        return PowerSeries(out, self.T)

    __rmul__ = __mul__

    def inverse(self):
        if self.c[0] == 0:
            raise ZeroDivisionError("series with zero constant term")
        out = [1 / self.c[0]]
        for n in range(1, self.T + 1):
            s = sum(self.c[i] * out[n - i] for i in range(1, n + 1))
            out.append(-s / self.c[0])
        return PowerSeries(out, self.T)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __getitem__(self, i):
        return self.c[i]

    def __repr__(self):
        return f"PowerSeries({[str(x) for x in self.c]}, T={self.T})"


# ---------------------------------------------------------------- closed forms

def case_tag(q: int, p: int) -> str:
    require_prime(q)
    require_prime(p)
    if q == p:
        return "equal-p"
    if q == 2:
        return "two"
    if q == 3:
        return "three"
    return "coprime-to-6p"


@dataclass(frozen=True)
class LocalDirichletSpec:
    q: int
    p: int
    k: int
    case: str
    closed: RationalFunction


def _f(*vals):
    return RationalFunction(Poly(vals))


def generic_factor(q: int) -> RationalFunction:
    """(1 - x/q)(1 - x^2/q) / ((1 - x^2)(1 - x^3)), the factor of zeta(2z)zeta(3z)/(zeta(z+1)zeta(2z+1))."""
    q = Fraction(q)
    return (_f(1, -1 / q) * _f(1, 0, -1 / q)) / (_f(1, 0, -1) * _f(1, 0, 0, -1))


def p_correction(k: int) -> RationalFunction:
    """(1 - x^(k+1))(1 - x^(k+2)) / ((1 - x)(1 - x^2))."""
    one_minus = lambda e: RationalFunction(Poly([1] + [0] * (e - 1) + [-1]))
    return one_minus(k + 1) * one_minus(k + 2) / (one_minus(1) * one_minus(2))


def closed_local(q: int, p: int, k: int) -> RationalFunction:
    """Closed form of D_q in x = q^(-z) for the constant +-p^k."""
    case = case_tag(q, p)
    if case == "equal-p":
        if q in (2, 3):
            raise NotImplementedError(f"no closed form for q = p = {q}")
        if k < 1:
            raise ParameterError("k >= 1 needed when q = p")
        x = X
        qq = Fraction(q)
        return ((1 - x**(k + 1)) * (1 - x**(k + 2)) * (1 - x / qq) * (1 - x**2 / qq)
                / ((1 - x) * (1 - x**2)**2 * (1 - x**3)))
    x = X
    if case == "three":
        return (x - 3) * (x**2 - 3) / (9 * (x - 1)**2 * (x + 1) * (x**2 + x + 1))
    if case == "two":
        return (1 - x / 2) * (1 - x**2 / 2) / ((1 - x**2) * (1 - x**3))
    qq = Fraction(q)
    return (1 - x / qq) * (1 - x**2 / qq) / ((1 - x**2) * (1 - x**3))


def local_spec(q: int, p: int, k: int) -> LocalDirichletSpec:
    return LocalDirichletSpec(q, p, k, case_tag(q, p), closed_local(q, p, k))


# ---------------------------------------------------------------- series from K

def _key(q, v, r, c):
    return LocalKey(q, v, r, c.p, c.k, c.sign)


def truncated_local_D(q, p, k, sign, T, budget=DEFAULT_PAIR_BUDGET, workers=1) -> PowerSeries:
    """sum_{v+2r<=T} x^(v+2r) K_q(q^v, q^r) / q^(2v+3r)."""
    c = SignedConstant(p, k, sign)
    coeffs = [Fraction(0)] * (T + 1)
    for m in range(T + 1):
        for r in range(m // 2 + 1):
            v = m - 2 * r
            key = _key(q, v, r, c)
            try:
                K = kloosterman_value(key, budget, workers)
            except ResourceError as exc:
                raise ResourceError(f"first unaffordable key {key.label}: {exc}", exc.pairs)
            coeffs[m] += Fraction(K, q ** (2 * v + 3 * r))
    return PowerSeries(coeffs, T)


def row_series(q, c, T, budget=DEFAULT_PAIR_BUDGET, workers=1) -> PowerSeries:
    """sum_{v<=T} x^v K_q(q^v, 1) / q^(2v)."""
    return PowerSeries([Fraction(kloosterman_value(_key(q, v, 0, c), budget, workers), q ** (2 * v))
                        for v in range(T + 1)], T)


def column_series(q, c, T, budget=DEFAULT_PAIR_BUDGET, workers=1) -> PowerSeries:
    """sum_{1<=r, 2r<=T} x^(2r) K_q(1, q^r) / q^(3r)."""
    coeffs = [Fraction(0)] * (T + 1)
    for r in range(1, T // 2 + 1):
        coeffs[2 * r] = Fraction(kloosterman_value(_key(q, 0, r, c), budget, workers), q ** (3 * r))
    return PowerSeries(coeffs, T)


def row_closed(q: int, p: int, k: int) -> RationalFunction:
    """Closed r = 0 row in x = q^(-z)."""
    x = X
    case = case_tag(q, p)
    if case == "two":
        return (x**5 - 3 * x**2 - 2 * x + 4) / (4 * (1 - x**2) * (1 - x**3))
    if case == "three":
        return (x**2 - x - 3) * (x**2 + x + 3) / (9 * (x - 1) * (x + 1) * (x**2 + x + 1))
    if case == "equal-p":
        if q in (2, 3):
            raise NotImplementedError(f"no closed row for q = p = {q}")
        return (q**2 - q * x - 2 * q * x**2 + x**2 + x**3) / (q**2 * (1 - x)**2 * (1 + x))
    n = cube_root_count(q, p**k)
    num = (n * (x**5 + x**4) + q**2 - q * x**4 - q * x**3 - 2 * q * x**2 - q * x
           + x**4 + 2 * x**3 + x**2)
    return num / (q**2 * (1 - x)**2 * (1 + x) * (1 + x + x**2))


def column_closed(q: int, p: int, k: int) -> RationalFunction:
    """Closed v = 0 column (r >= 1) in x = q^(-z)."""
    x = X
    case = case_tag(q, p)
    if case == "two":
        return x**2 * (x**4 + 1 - x**6 / 4) / (4 * (1 - x**2 / 2) * (1 - x**6 / 4))
    if case == "three":
        return (x**2 * (2 + x**4) / (3 * (3 - x**2))
                + delta9(p**k) * x**12 / ((3 - x**2) * (9 - x**6)))
    if case == "equal-p":
        raise NotImplementedError("the q = p column is given by counts, see equal_p_overorder_count")
    n = cube_root_count(q, p**k)
    return (q - 1) * x**2 / (q * (q - x**2)) + n * q * x**6 / ((q - x**2) * (q**2 - x**6))


def equal_p_overorder_count(p: int, r: int, beta: int, k: int) -> int:
    """Solutions (u, a, b) of the v = 0 system in one beta stratum when c = +-p^k.

    u runs mod p^(r-2beta) and (a, b) mod p^(2r); needs p > 3 and r >= 3beta, r > 0.
    """
    if p in (2, 3):
        raise NotImplementedError("count formula needs p > 3")
    if not (r > 0 and 0 <= 3 * beta <= r and k > 0):
        raise ParameterError("need r > 0, 0 <= 3 beta <= r and k > 0")
    n, M, g = r - 2 * beta, 2 * r - 3 * beta, gcd(3, p - 1)
    shells = sum(p**t for t in range(beta, n) if 3 * t < k)
    shells += sum(p**t for t in range(n) if 3 * t > k and 2 * t <= k - beta)
    total = (p ** (3 * r) if k >= M else 0) + (p - 1) * p ** (2 * r + 2 * beta - 1) * shells
    if k % 3 == 0 and k // 3 <= n - 1:
        t0 = k // 3
        if t0 >= beta:
            total += (p - 1) * p ** (2 * r + 2 * beta + t0 - 1)
        else:
            total += g * p ** (2 * r + beta + 2 * t0)
    return total


def column_expected(q: int, p: int, k: int, T: int) -> PowerSeries:
    """Expected v = 0 column through x^T."""
    if case_tag(q, p) != "equal-p":
        return column_closed(q, p, k).taylor(T)
    coeffs = [Fraction(0)] * (T + 1)
    for r in range(1, T // 2 + 1):
        K = sum(equal_p_overorder_count(q, r, beta, k) for beta in range(r // 3 + 1))
        coeffs[2 * r] = Fraction(K, q ** (3 * r))
    return PowerSeries(coeffs, T)


# ---------------------------------------------------------------- reports

def _compare(report, label, expected: PowerSeries, computed: PowerSeries):
    for i, (e, c) in enumerate(zip(expected.c, computed.c)):
        report.add(f"{label}[x^{i}]", e, c)
    return report


def verify_local(q, p, k, sign, T, budget=DEFAULT_PAIR_BUDGET, workers=1) -> MatchReport:
    report = MatchReport("verify local", {"local_prime": q, "const_prime": p, "k": k,
                                          "sign": "+" if sign > 0 else "-", "trunc": T})
    expected = closed_local(q, p, k).taylor(T)
    computed = truncated_local_D(q, p, k, sign, T, budget, workers)
    return _compare(report, f"D_{q}", expected, computed)


def verify_intermediate(q, p, k, which, T, sign=1, budget=DEFAULT_PAIR_BUDGET,
                        workers=1) -> MatchReport:
    """Check the r = 0 row or the v = 0 column against its closed form."""
    if which not in ("row", "column"):
        raise ParameterError(f"unknown axis {which!r}")
    c = SignedConstant(p, k, sign)
    report = MatchReport("verify intermediate",
                         {"local_prime": q, "const_prime": p, "k": k,
                          "sign": "+" if sign > 0 else "-", "trunc": T, "axis": which})
    if which == "row":
        expected = row_closed(q, p, k).taylor(T)
        computed = row_series(q, c, T, budget, workers)
    else:
        expected = column_expected(q, p, k, T)
        computed = column_series(q, c, T, budget, workers)
    return _compare(report, f"{which}_{q}", expected, computed)


def global_consistency(p: int, k: int, primes=(2, 3, 5, 7, 11, 13)) -> MatchReport:
    """Each local closed form against the Euler factor of the global evaluation."""
    report = MatchReport("verify global", {"const_prime": p, "k": k})
    for q in primes:
        expected = generic_factor(q)
        if q == p:
            if q in (2, 3):
                continue
            expected = expected * p_correction(k)
        closed = closed_local(q, p, k)
        report.add(f"factor_{q}", expected, closed)
    if p not in (2, 3):
        quotient = closed_local(p, p, k) / generic_factor(p)
        report.add(f"factor_{p}/generic", p_correction(k), quotient)
    return report


def trivial_trace_factor(p: int, k: int) -> Fraction:
    """p^k (1 - p^-(k+1))/(1 - p^-1) (1 - p^-(k+2))/(1 - p^-2)."""
    require_prime(p)
    if k < 0:
        raise ParameterError("k must be non-negative")
    P = Fraction(p)
    return P**k * (1 - P**-(k + 1)) / (1 - 1 / P) * (1 - P**-(k + 2)) / (1 - P**-2)


def trace_factor_series(p: int, k: int) -> Fraction:
    """p^-k times the X^k coefficient of 1/((1 - X)(1 - pX)(1 - p^2 X))."""
    require_prime(p)
    T = k
    prod = PowerSeries([1], T)
    for a in (1, p, p * p):
        prod = prod * PowerSeries([1, -a], T)
    return prod.inverse()[k] / Fraction(p) ** k
