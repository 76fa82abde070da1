"""The smoothing kernel F, its Mellin transform, and the residue constants.

F(x) = (1 / 2K_0(2)) * int_x^inf exp(-y - 1/y) dy / y.  With y = e^t the
integrand becomes exp(-2 cosh t), which is below 1e-1200 for |t| > 8, so
every integral here lives on a bounded t-interval and composite Simpson
converges fast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .report import MatchReport

T_MAX = 8.0


class NumericError(ArithmeticError):
    """A quadrature did not reach its tolerance within the node budget."""


@dataclass(frozen=True)
class Quadrature:
    """Composite Simpson with interval doubling until two levels agree."""

    tol: float = 1e-10
    max_nodes: int = 2**22
    start_nodes: int = 64

    def integrate(self, f, a: float, b: float):
        """Return (value, error estimate) of int_a^b f; f takes numpy arrays."""
        if a == b:
            return 0.0, 0.0
        n = self.start_nodes
        prev = _simpson(f, a, b, n)
        while True:
            n *= 2
            cur = _simpson(f, a, b, n)
            err = abs(cur - prev) / 15.0
            if err <= self.tol:
                return cur + (cur - prev) / 15.0, err
            if n >= self.max_nodes:
                raise NumericError(f"Simpson on [{a}, {b}] stalled at error {err:.3g}")
            prev = cur


def _simpson(f, a, b, n):
    t = np.linspace(a, b, n + 1)
    y = f(t)
    h = (b - a) / n
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


DEFAULT_QUAD = Quadrature()


def _density(t):
    return np.exp(-2.0 * np.cosh(t))


def bessel_k(z: float, quad: Quadrature = DEFAULT_QUAD) -> float:
    """K_z(2) = int_0^inf exp(-2 cosh t) cosh(z t) dt."""
    return quad.integrate(lambda t: _density(t) * np.cosh(z * t), 0.0, T_MAX)[0]


def normalizer(quad: Quadrature = DEFAULT_QUAD) -> float:
    """int_R exp(-2 cosh t) dt = 2 K_0(2)."""
    return quad.integrate(_density, -T_MAX, T_MAX)[0]


def kernel_F(x: float, quad: Quadrature = DEFAULT_QUAD) -> float:
    if x <= 0:
        raise ValueError("F is defined for x > 0")
    lo = math.log(x)
    hi = max(T_MAX, lo + 1.0)
    return quad.integrate(_density, lo, hi)[0] / normalizer(quad)


def one_minus_F(x: float, quad: Quadrature = DEFAULT_QUAD) -> float:
    """1 - F(x) as a lower-tail integral, free of cancellation near x = 0."""
    if x <= 0:
        raise ValueError("F is defined for x > 0")
    hi = math.log(x)
    lo = min(-T_MAX, hi - 1.0)
    return quad.integrate(_density, lo, hi)[0] / normalizer(quad)


class _FGrid:
    """F(e^s) and 1 - F(e^s) on a uniform s-grid via cumulative Simpson."""

    def __init__(self, h=1e-3, L=T_MAX):
        n = int(round(2 * L / h))
        n += n % 2
        self.s = np.linspace(-L, L, n + 1)
        self.h = 2 * L / n
        d = _density(self.s)
        # cumulative integral from -L: Simpson panels give the even nodes,
        # Simpson on each half panel (with its own midpoint) the odd ones
        cum = np.zeros_like(d)
        panel = self.h / 3.0 * (d[:-2:2] + 4.0 * d[1:-1:2] + d[2::2])
        cum[2::2] = np.cumsum(panel)
        mid = _density(self.s[1::2] - self.h / 2)
        cum[1::2] = cum[:-1:2] + self.h / 6.0 * (d[:-1:2] + 4.0 * mid + d[1::2])
        total = cum[-1]
        self.lower = cum / total          # 1 - F(e^s)
        self.upper = (total - cum) / total  # F(e^s)


def _grid_integral(y, h):
    n = len(y) - 1
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:n:2].sum() + 2.0 * y[2:n - 1:2].sum())


_GRID = None


def _grid():
    global _GRID
    if _GRID is None:
        _GRID = _FGrid()
    return _GRID


def mellin_F(z: float) -> float:
    """Continued Mellin transform of F at real z != 0.

    int_0^1 (F(u) - 1) u^(z-1) du + 1/z + int_1^inf F(u) u^(z-1) du, computed
    in u = e^s; both pieces converge for every real z.
    """
    if z == 0:
        raise ZeroDivisionError("F~ has a pole at z = 0")
    g = _grid()
    w = np.exp(z * g.s)
    neg = g.s <= 0
    pos = g.s >= 0
    inner = -_grid_integral((g.lower * w)[neg], g.h)
    outer = _grid_integral((g.upper * w)[pos], g.h)
    return inner + 1.0 / z + outer


def mellin_F_direct(z: float) -> float:
    """int_0^inf F(u) u^(z-1) du for z > 0, without continuation.

    Below u = e^-8, F(u) = 1 to double precision, so that tail contributes
    e^(-8z)/z exactly.
    """
    if z <= 0:
        raise ValueError("the Mellin integral converges for z > 0 only")
    g = _grid()
    return _grid_integral(g.upper * np.exp(z * g.s), g.h) + math.exp(-z * T_MAX) / z


def mellin_F_bessel(z: float) -> float:
    """K_z(2) / (z K_0(2)), using the quadrature Bessel function."""
    return bessel_k(z) / (z * bessel_k(0.0))


def mellin_residue_check() -> MatchReport:
    report = MatchReport("verify analytic:mellin", {})
    for z in (1e-2, 1e-3, 1e-4):
        val = z * mellin_F_direct(z)
        report.add(f"z*F~(z) at z={z:g}", 1.0, val, abs(val - 1.0) < 1e-2)
    for z in (0.25, 0.5, 0.75):
        s = mellin_F(z) + mellin_F(-z)
        report.add(f"F~({z})+F~(-{z})", 0.0, s, abs(s) < 1e-6)
        b = mellin_F_bessel(z) + mellin_F_bessel(-z)
        report.add(f"Bessel F~({z})+F~(-{z})", 0.0, b, abs(b) < 1e-6)
    direct, bessel = mellin_F_direct(1.0), mellin_F_bessel(1.0)
    report.add("F~(1) vs K_1(2)/K_0(2)", bessel, direct, abs(direct - bessel) < 1e-6)
    return report


def kernel_bounds_check(xs_upper=(0.5, 1.0, 2.0, 5.0), xs_lower=(0.2, 0.5, 1.0)) -> MatchReport:
    report = MatchReport("verify analytic:kernel", {})
    two_k0 = normalizer()
    for x in xs_upper:
        F = kernel_F(x)
        bound = math.exp(-x) / two_k0
        report.add(f"0<F({x:g})<e^-x/2K0(2)", f"(0, {bound!r})", F, 0.0 < F < bound)
    for x in xs_lower:
        G = one_minus_F(x)
        bound = math.exp(-1.0 / x) / two_k0
        report.add(f"0<1-F({x:g})<e^-1/x/2K0(2)", f"(0, {bound!r})", G, 0.0 < G < bound)
    F0 = kernel_F(1e-4)
    report.add("F(1e-4)>0.999", "> 0.999", F0, F0 > 0.999)
    return report


# ---------------------------------------------------------------- residues

def p_factor(s, p: int, k: int):
    """(1 - p^-s(k+1))/(1 - p^-s) * (1 - p^-s(k+2))/(1 - p^-2s)."""
    s = mpmath.mpf(s)
    return ((1 - mpmath.power(p, -s * (k + 1))) / (1 - mpmath.power(p, -s))
            * (1 - mpmath.power(p, -s * (k + 2))) / (1 - mpmath.power(p, -2 * s)))


def residue_product(s, k: int, positive: bool, p: int = 5):
    """The full product whose s -> 0 limit is the residue constant.

    Uses Gamma((1 - s)/2) in the totally real branch; see ``h_residue_constant``.
    """
    s = mpmath.mpf(s)
    zeta_part = mpmath.zeta(2 * s) * mpmath.zeta(3 * s) / (mpmath.zeta(s + 1) * mpmath.zeta(2 * s + 1))
    if positive:
        H = (mpmath.pi ** (mpmath.mpf(3) / 2 * (1 - 2 * s))
             * mpmath.gamma(s / 2) ** 2 / mpmath.gamma((1 - s) / 2) ** 2)
    else:
        H = (mpmath.pi ** ((1 - 2 * s) / 2) * (2 * mpmath.pi) ** (1 - 2 * s)
             * mpmath.gamma(s) / mpmath.gamma(1 - s))
    return p_factor(s, p, k) * zeta_part * H


def richardson(f, s1=1e-3, s2=1e-4):
    """Linear extrapolation to s = 0 from two samples of f(s) = L + a s + O(s^2)."""
    f1, f2 = f(s1), f(s2)
    s1, s2 = mpmath.mpf(s1), mpmath.mpf(s2)
    return (s1 * f2 - s2 * f1) / (s1 - s2)


def h_residue_constant(k: int, positive: bool = True, p: int = 5) -> float:
    """lim_{s->0} of the residue product; (k+1)(k+2) sqrt(pi) or 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with mpmath.workdps(30):
        return float(richardson(lambda s: residue_product(s, k, positive, p)))


def p_factor_limit(k: int, p: int = 5) -> float:
    """s -> 0 limit of the p-factor; it is analytic at 0, so small samples are safe."""
    with mpmath.workdps(40):
        return float(richardson(lambda s: p_factor(s, p, k), 1e-6, 1e-7))


def residue_check(k: int) -> MatchReport:
    report = MatchReport("verify analytic:residue", {"k": k})
    target = (k + 1) * (k + 2) * math.sqrt(math.pi)
    pos = h_residue_constant(k, True)
    report.add(f"residue Pol>0 k={k}", target, pos, abs(pos - target) <= 1e-3 * target)
    neg = h_residue_constant(k, False)
    report.add(f"residue Pol<0 k={k}", 0.0, neg, abs(neg) <= 1e-3)
    pf = p_factor_limit(k)
    half = (k + 1) * (k + 2) / 2
    report.add(f"p-factor limit k={k}", half, pf, abs(pf - half) <= 1e-6)
    return report
