"""Command-line front end.

Naming: ``--local-prime`` is the prime q of the local sums and overorders,
``--const-prime/--k/--sign`` fix the constant +-p^k.

Examples::

    cubicorders ktab --local-prime 2 --const-prime 5 --k 1 --vmax 4 --rmax 2
    cubicorders verify local --local-prime 2 --const-prime 5 --k 1 --trunc 8
    cubicorders verify euler --n 6 --f 1 --const-prime 5
    cubicorders verify analytic --k 1
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import analytic, kernel, series
from .arith import ParameterError, is_prime
from .cubic import SignedConstant
from .kloosterman import (DEFAULT_PAIR_BUDGET, LocalKey, ResourceError, global_K,
                          global_K_direct, kloosterman_value, local_K,
                          periodicity_check, resolve_workers)
from .overorders import oracle_solution_table, system_solution_table
from .report import MatchReport

DEFAULT_TRUNC = {2: 10, 3: 7, 5: 5, 7: 4}
VERIFY_TARGETS = ("local", "intermediate", "global", "euler", "periodicity", "analytic")


@dataclass
class RunConfig:
    local_primes: list = field(default_factory=list)
    const_prime: int = 5
    k: int = 1
    sign: int = 1
    trunc: int | None = None
    vmax: int = 4
    rmax: int = 2
    n: int | None = None
    f: int | None = None
    multiplier: int = 2
    axis: str = "both"
    pair_budget: int = DEFAULT_PAIR_BUDGET
    workers: int = 1
    timing: bool = True

    def validate(self):
        for q in self.local_primes:
            if not is_prime(q):
                raise ParameterError(f"--local-prime {q} is not prime")
        if len(set(self.local_primes)) != len(self.local_primes):
            raise ParameterError("local primes must be distinct")
        if not is_prime(self.const_prime):
            raise ParameterError(f"--const-prime {self.const_prime} is not prime")
        if self.k < 0 or self.pair_budget <= 0:
            raise ParameterError("k must be non-negative and the pair budget positive")
        return self

    @property
    def constant(self) -> SignedConstant:
        return SignedConstant(self.const_prime, self.k, self.sign)

    def trunc_for(self, q):
        return self.trunc if self.trunc is not None else DEFAULT_TRUNC.get(q, 3)

    def base_params(self):
        # worker count is deliberately absent: output must not depend on it
        return {"const_prime": self.const_prime, "k": self.k,
                "sign": "+" if self.sign > 0 else "-", "pair_budget": self.pair_budget}


def cmd_ktab(cfg: RunConfig) -> MatchReport:
    """K_q(q^v, q^r) on the grid; the full-modulus route cross-checks where affordable."""
    report = MatchReport("ktab", dict(cfg.base_params(), local_primes=",".join(map(str, cfg.local_primes)),
                                      vmax=cfg.vmax, rmax=cfg.rmax))
    for q in cfg.local_primes:
        for r in range(cfg.rmax + 1):
            for v in range(cfg.vmax + 1):
                key = LocalKey(q, v, r, cfg.const_prime, cfg.k, cfg.sign)
                try:
                    value = kloosterman_value(key, cfg.pair_budget, cfg.workers)
                except ResourceError as exc:
                    report.add(key.label, "n/a", f"resource-error: {exc}", False)
                    continue
                try:
                    full = local_K(key, cfg.pair_budget, cfg.workers)
                except ResourceError:
                    report.add(key.label, "n/a", value, True)
                    continue
                report.add(key.label, full, value)
    return report


def _verify_local(cfg):
    report = MatchReport("verify local", dict(cfg.base_params(),
                                              local_primes=",".join(map(str, cfg.local_primes))))
    for q in cfg.local_primes:
        T = cfg.trunc_for(q)
        sub = series.verify_local(q, cfg.const_prime, cfg.k, cfg.sign, T,
                                  cfg.pair_budget, cfg.workers)
        report.extend(sub, prefix=f"T={T}:")
    return report


def _verify_intermediate(cfg):
    report = MatchReport("verify intermediate",
                         dict(cfg.base_params(), local_primes=",".join(map(str, cfg.local_primes)),
                              axis=cfg.axis))
    axes = ("row", "column") if cfg.axis == "both" else (cfg.axis,)
    for q in cfg.local_primes:
        T = cfg.trunc_for(q)
        for which in axes:
            sub = series.verify_intermediate(q, cfg.const_prime, cfg.k, which, T, cfg.sign,
                                             cfg.pair_budget, cfg.workers)
            report.extend(sub, prefix=f"T={T}:")
    return report


def _verify_global(cfg):
    sub = series.global_consistency(cfg.const_prime, cfg.k)
    report = MatchReport("verify global", dict(cfg.base_params()))
    report.extend(sub)
    return report


def euler_pairs(bound=200):
    return [(n, f) for f in range(1, bound + 1) if f * f <= bound
            for n in range(1, bound // (f * f) + 1)]


def _verify_euler(cfg):
    params = dict(cfg.base_params())
    if cfg.n is not None or cfg.f is not None:
        pairs = [(cfg.n or 1, cfg.f or 1)]
    else:
        pairs = euler_pairs()
        params["range"] = "n*f^2<=200"
    params.update(n=cfg.n, f=cfg.f)
    report = MatchReport("verify euler", params)
    c = cfg.constant
    for n, f in pairs:
        report.add(f"K({n},{f})", global_K_direct(n, f, c, cfg.pair_budget),
                   global_K(n, f, c, cfg.pair_budget, cfg.workers))
    return report


def _verify_periodicity(cfg):
    n, f = cfg.n or 1, cfg.f or 1
    report = MatchReport("verify periodicity", dict(cfg.base_params(), n=n, f=f,
                                                    multiplier=cfg.multiplier))
    ok = periodicity_check(n, f, cfg.constant, cfg.multiplier, cfg.pair_budget)
    report.add(f"periodic mod {n * f * f} ({n},{f})", True, ok)
    return report


def _verify_analytic(cfg):
    report = MatchReport("verify analytic", {"k": cfg.k})
    report.extend(analytic.kernel_bounds_check())
    report.extend(analytic.mellin_residue_check())
    report.extend(analytic.residue_check(cfg.k))
    return report


def cmd_verify(cfg: RunConfig, target: str) -> MatchReport:
    handlers = {"local": _verify_local, "intermediate": _verify_intermediate,
                "global": _verify_global, "euler": _verify_euler,
                "periodicity": _verify_periodicity, "analytic": _verify_analytic}
    if target not in handlers:
        raise ParameterError(f"unknown verify target {target!r}")
    return handlers[target](cfg)


def cmd_oracle_diff(cfg: RunConfig) -> MatchReport:
    """Congruence system against the coset scan, over all (a, b) mod q^(2r)."""
    report = MatchReport("oracle-diff", dict(cfg.base_params(),
                                             local_primes=",".join(map(str, cfg.local_primes)),
                                             rmax=cfg.rmax))
    for q in cfg.local_primes:
        for r in range(1, cfg.rmax + 1):
            if q ** (4 * r) > cfg.pair_budget:
                report.add(f"q={q} r={r}", 0, f"resource-error: {q ** (4 * r)} pairs", False)
                continue
            sys_t = system_solution_table(cfg.constant, q, r)
            orc_t = oracle_solution_table(cfg.constant, q, r)
            mismatched = int((sys_t != orc_t).any(axis=0).sum())
            report.add(f"q={q} r={r} mismatched pairs", 0, mismatched)
            report.add(f"q={q} r={r} overorders", int(orc_t.sum()), int(sys_t.sum()))
    return report


def cmd_trace_factor(cfg: RunConfig) -> MatchReport:
    report = MatchReport("trace-factor", {"const_prime": cfg.const_prime, "k": cfg.k})
    report.add(f"trace({cfg.const_prime},{cfg.k})",
               series.trace_factor_series(cfg.const_prime, cfg.k),
               series.trivial_trace_factor(cfg.const_prime, cfg.k))
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--local-prime", type=int, nargs="+", default=None,
                        help="local prime(s) q of the enumeration")
    common.add_argument("--const-prime", type=int, default=5, help="prime p of the constant")
    common.add_argument("--k", type=int, default=1, help="exponent k of the constant")
    common.add_argument("--sign", choices=["+", "-"], default="+", help="sign of the constant")
    common.add_argument("--trunc", type=int, default=None, help="series truncation T")
    common.add_argument("--vmax", type=int, default=4)
    common.add_argument("--rmax", type=int, default=2)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--f", type=int, default=None)
    common.add_argument("--multiplier", type=int, default=2, help="lift multiplier for periodicity")
    common.add_argument("--axis", choices=["row", "column", "both"], default="both")
    common.add_argument("--pair-budget", type=int, default=DEFAULT_PAIR_BUDGET)
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $CUBICORDERS_WORKERS or CPU count)")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--no-timing", action="store_true",
                        help="emit elapsed_ms as null so reports are byte-reproducible")

    parser = argparse.ArgumentParser(prog="cubicorders", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ktab", parents=[common], help="table of local sums K_q(q^v, q^r)")
    p_verify = sub.add_parser("verify", parents=[common], help="run a verification target")
    p_verify.add_argument("target", choices=VERIFY_TARGETS)
    sub.add_parser("oracle-diff", parents=[common], help="system vs coset-scan overorders")
    sub.add_parser("trace-factor", parents=[common], help="finite trace of the trivial representation")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(local_primes=args.local_prime or [2], const_prime=args.const_prime,
                     k=args.k, sign=1 if args.sign == "+" else -1, trunc=args.trunc,
                     vmax=args.vmax, rmax=args.rmax, n=args.n, f=args.f,
                     multiplier=args.multiplier, axis=args.axis,
                     pair_budget=args.pair_budget, workers=resolve_workers(args.workers),
                     timing=not args.no_timing).validate()


def run(argv=None) -> tuple:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    if args.command == "ktab":
        report = cmd_ktab(cfg)
    elif args.command == "verify":
        report = cmd_verify(cfg, args.target)
    elif args.command == "oracle-diff":
        report = cmd_oracle_diff(cfg)
    else:
        report = cmd_trace_factor(cfg)
    report.finish(timing=cfg.timing)
    return report, args


def main(argv=None) -> int:
    try:
        report, args = run(argv)
    except (ParameterError, ResourceError, NotImplementedError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{report.summary()} [{kernel.BACKEND} kernel]", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
