"""Binary cubic forms, the GL(2) action, and local splitting data.

A form ``c3*x^3 + c2*x^2*y + c1*x*y^2 + c0*y^3`` encodes a cubic ring
(Delone-Faddeev).  The order generated by a root of ``X^3 - aX^2 + bX - c``
corresponds to the form ``(1, -a, b, -c)``; that is the only sign convention
used in this package.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .arith import ParameterError, is_prime, require_prime


@dataclass(frozen=True)
class SignedConstant:
    """The determinant ``sign * p**k`` of a contributing class."""

    p: int
    k: int
    sign: int = 1

    def __post_init__(self):
        require_prime(self.p)
        if self.k < 0:
            raise ParameterError("k must be non-negative")
        if self.sign not in (1, -1):
            raise ParameterError("sign must be +1 or -1")

    @property
    def value(self) -> int:
        return self.sign * self.p**self.k

    def negated(self) -> "SignedConstant":
        return SignedConstant(self.p, self.k, -self.sign)

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}{self.p}^{self.k}"


def constant_value(c) -> int:
    return c.value if isinstance(c, SignedConstant) else int(c)


class Matrix2(NamedTuple):
    """Integer 2x2 matrix ``[[a, b], [c, d]]`` acting on row vectors."""

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(self.a * other.a + self.b * other.c,
                       self.a * other.b + self.b * other.d,
                       self.c * other.a + self.d * other.c,
                       self.c * other.b + self.d * other.d)

    def adjugate(self) -> "Matrix2":
        return Matrix2(self.d, -self.b, -self.c, self.a)


IDENTITY = Matrix2(1, 0, 0, 1)


@dataclass(frozen=True)
class BinaryCubicForm:
    """Coefficients may be Fractions for intermediate transformed forms."""

    c3: object
    c2: object
    c1: object
    c0: object

    @classmethod
    def from_params(cls, a: int, b: int, c) -> "BinaryCubicForm":
        """Form of the order generated by a root of X^3 - aX^2 + bX - c."""
        return cls(1, -a, b, -constant_value(c))

    @property
    def coefficients(self) -> tuple:
        return (self.c3, self.c2, self.c1, self.c0)

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.coefficients)

    def integral(self) -> "BinaryCubicForm":
        if not self.is_integral():
            raise ParameterError(f"{self} has non-integral coefficients")
        return BinaryCubicForm(*(int(x) for x in self.coefficients))

    def reduce(self, q: int) -> tuple:
        return tuple(int(x) % q for x in self.integral().coefficients)

    def __call__(self, x, y):
        return (self.c3 * x**3 + self.c2 * x**2 * y + self.c1 * x * y**2
                + self.c0 * y**3)

    def discriminant(self):
        return form_discriminant(*self.coefficients)

    def __str__(self):
        return f"({self.c3}, {self.c2}, {self.c1}, {self.c0})"


def discriminant(a: int, b: int, c: int) -> int:
    """Discriminant of X^3 - aX^2 + bX - c."""
    return a * a * b * b - 4 * b**3 - 4 * a**3 * c + 18 * a * b * c - 27 * c * c


def form_discriminant(a, b, c, d):
    return (b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d
            + 18 * a * b * c * d)


def _compose(coeffs, m: Matrix2) -> tuple:
    """Coefficients of f((x, y) m) for an integer matrix m."""
    c3, c2, c1, c0 = coeffs
    # (x, y) m = (a x + c y, b x + d y)
    p0, p1 = m.a, m.c  # X = p0 x + p1 y
    r0, r1 = m.b, m.d  # Y = r0 x + r1 y
    x3 = (c3 * p0**3 + c2 * p0**2 * r0 + c1 * p0 * r0**2 + c0 * r0**3)
    x2y = (c3 * 3 * p0**2 * p1
           + c2 * (p0**2 * r1 + 2 * p0 * p1 * r0)
           + c1 * (p1 * r0**2 + 2 * p0 * r0 * r1)
           + c0 * 3 * r0**2 * r1)
    xy2 = (c3 * 3 * p0 * p1**2
           + c2 * (2 * p0 * p1 * r1 + p1**2 * r0)
           + c1 * (p0 * r1**2 + 2 * p1 * r0 * r1)
           + c0 * 3 * r0 * r1**2)
    y3 = (c3 * p1**3 + c2 * p1**2 * r1 + c1 * p1 * r1**2 + c0 * r1**3)
    return (x3, x2y, xy2, y3)


def act(f: BinaryCubicForm, g: Matrix2) -> BinaryCubicForm:
    """Twisted action ``f^g(x, y) = det(g) f((x, y) g^{-1})``.

    Computed as ``f((x, y) adj(g)) / det(g)^2`` with exact rationals, so
    ``(f^g)^h == f^(gh)``.
    """
    det = g.det
    if det == 0:
        raise ParameterError("singular matrix")
    num = _compose(f.coefficients, g.adjugate())
    return BinaryCubicForm(*(Fraction(x, det * det) for x in num))


def is_primitive_at(f: BinaryCubicForm, q: int) -> bool:
    return any(x % q for x in f.integral().coefficients)


def is_contributing(a: int, b: int, c: SignedConstant) -> bool:
    """Rational root test: X^3 - aX^2 + bX - c is irreducible over Q."""
    value = c.value
    for t in range(c.k + 1):
        for root in (c.p**t, -c.p**t):
            if root**3 - a * root**2 + b * root - value == 0:
                return False
    return True


class SplittingType(enum.IntEnum):
    S111 = 0
    S12 = 1
    S3 = 2
    S11sq = 3
    S1cube = 4
    Zero = 5


def _affine_multiplicity(coeffs, t, q):
    """Multiplicity of X = t as a root of a polynomial (coefficients high to low)."""
    mult = 0
    poly = list(coeffs)
    while len(poly) > 1:
        # synthetic division by (X - t)
        quot, acc = [], 0
        for c in poly:
            acc = (acc * t + c) % q
            quot.append(acc)
        if quot[-1] != 0:
            break
        mult += 1
        poly = quot[:-1]
    return mult


def splitting_type_mod(coeffs: tuple, q: int) -> SplittingType:
    """Classify a cubic form over F_q by its roots on P^1(F_q)."""
    c3, c2, c1, c0 = (x % q for x in coeffs)
    if c3 == c2 == c1 == c0 == 0:
        return SplittingType.Zero
    poly = [c3, c2, c1, c0]
    while poly[0] == 0:
        poly.pop(0)
    mults = []
    infinity = 4 - len(poly)
    if infinity:
        mults.append(infinity)
    for t in range(q):
        m = _affine_multiplicity(poly, t, q)
        if m:
            mults.append(m)
    linear = sum(mults)
    if linear == 0:
        return SplittingType.S3
    if linear == 1:
        return SplittingType.S12
    if linear != 3:
        raise AssertionError(f"impossible root multiplicities {mults} for {coeffs} mod {q}")
    return {3: SplittingType.S111, 2: SplittingType.S11sq,
            1: SplittingType.S1cube}[len(mults)]


def splitting_type(f: BinaryCubicForm, q: int) -> SplittingType:
    require_prime(q)
    return splitting_type_mod(f.integral().coefficients, q)


def classify_forms(c3, c2, c1, c0, q: int):
    """Vectorized splitting types of forms mod q.

    Counts distinct roots on P^1(F_q) and uses the discriminant to detect a
    repeated factor; a repeated factor is always rational, so the distinct
    root count then separates (1,1^2) from (1^3).
    """
    c3, c2, c1, c0 = (np.asarray(x, dtype=np.int64) % q for x in (c3, c2, c1, c0))
    x = np.arange(q, dtype=np.int64)
    vals = (((c3[..., None] * x + c2[..., None]) * x + c1[..., None]) * x
            + c0[..., None]) % q
    roots = (vals == 0).sum(axis=-1) + (c3 == 0)
    square_free = form_discriminant(c3, c2, c1, c0) % q != 0
    out = np.full(c3.shape, int(SplittingType.S1cube), dtype=np.uint8)
    out[square_free & (roots == 3)] = SplittingType.S111
    out[square_free & (roots == 1)] = SplittingType.S12
    out[square_free & (roots == 0)] = SplittingType.S3
    out[~square_free & (roots == 2)] = SplittingType.S11sq
    out[(c3 == 0) & (c2 == 0) & (c1 == 0) & (c0 == 0)] = SplittingType.Zero
    return out


TABLE_MAX_PRIME = 31


@lru_cache(maxsize=16)
def type_table(q: int) -> bytes:
    """Splitting type of every form mod q, indexed by c3*q^3 + c2*q^2 + c1*q + c0."""
    if not is_prime(q):
        raise ParameterError(f"{q} is not prime")
    if q > TABLE_MAX_PRIME:
        raise ParameterError(f"type table for q={q} would have {q**4} entries")
    rest = np.arange(q**3, dtype=np.int64)
    c2, c1, c0 = rest // (q * q), (rest // q) % q, rest % q
    return b"".join(classify_forms(np.full_like(rest, c3), c2, c1, c0, q).tobytes()
                    for c3 in range(q))


def w_coefficient(t: SplittingType, v: int) -> int:
    """Local coefficient W_R(q^v) of L_R for an order of splitting type t."""
    if v < 0:
        raise ParameterError("v must be non-negative")
    if v == 0:
        return 1
    if t == SplittingType.S111:
        return v + 1
    if t == SplittingType.S12:
        return 1 if v % 2 == 0 else 0
    if t == SplittingType.S3:
        return (1, -1, 0)[v % 3]
    if t == SplittingType.S11sq:
        return 1
    return 0


def a_coefficient(f: BinaryCubicForm, q: int, t: int) -> int:
    """a_R(q^t): 1 for t = 0, the non-Gorenstein indicator for t = 1, else 0."""
    if t == 0:
        return 1
    if t == 1:
        return 0 if is_primitive_at(f, q) else 1
    return 0


def local_weight(t: SplittingType, v: int, q: int) -> int:
    """sum_{0<=s<=v} q^s a_R(q^s) W_R(q^{v-s}) for an order of type t at q.

    Non-Gorenstein at q is exactly type Zero.
    """
    w = w_coefficient(t, v)
    if v >= 1 and t == SplittingType.Zero:
        w += q * w_coefficient(t, v - 1)
    return w
