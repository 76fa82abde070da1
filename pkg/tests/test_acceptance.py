"""Acceptance criteria 1-10, one test each.

Every test records a single PASS/FAIL line, printed in the terminal summary
and echoed immediately to stdout.
"""
import json
import math
import time

import pytest

from cubicorders.analytic import (h_residue_constant, kernel_bounds_check, mellin_F_direct)
from cubicorders.cli import euler_pairs, run
from cubicorders.cubic import BinaryCubicForm, SignedConstant
from cubicorders.kloosterman import (LocalKey, clear_cache, global_K, global_K_direct, kloosterman_value,
                                     periodicity_check)
from cubicorders.overorders import enumerate_overorders, oracle_enumerate
from cubicorders.series import (closed_local, global_consistency, trace_factor_series,
                                trivial_trace_factor, verify_intermediate)

from conftest import ACCEPTANCE_LINES

SIGNS = ("+", "-")
# (const prime, k) -> local primes of the criterion-1 grid; truncations are the CLI
# defaults 10, 7, 5, 4 for q = 2, 3, 5, 7
LOCAL_GRID = {(5, 1): [2, 3, 5, 7], (5, 2): [2, 3, 5], (7, 1): [2, 3, 5], (7, 2): [2, 3]}
EXPECTED_T = {2: 10, 3: 7, 5: 5, 7: 4}
RAISED_BUDGET = 10**11


def _record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _cli(argv):
    report, args = run(argv + ["--no-timing"])
    return report, report.render(args.format)


def _local_argvs():
    out = []
    for (p, k), primes in LOCAL_GRID.items():
        for sign in SIGNS:
            out.append(["verify", "local", "--local-prime", *map(str, primes),
                        "--const-prime", str(p), "--k", str(k), "--sign", sign])
    return out


def _euler_argvs():
    return [["verify", "euler", "--const-prime", str(p)] for p in (5, 7)]


def test_criterion_01_local_closed_forms():
    clear_cache()  # time a cold run
    start = time.perf_counter()
    items = failures = 0
    for argv in _local_argvs():
        report, _ = _cli(argv + ["--workers", "1"])
        for q in map(int, argv[3:argv.index("--const-prime")]):
            assert any(it["label"].startswith(f"T={EXPECTED_T[q]}:D_{q}[") for it in report.items)
        items += len(report.items)
        failures += len(report.failures())
    elapsed = time.perf_counter() - start
    _record(1, failures == 0 and elapsed < 600,
            f"verify local: {items - failures}/{items} coefficients exact, {elapsed:.1f}s")


def test_criterion_02_axis_identities():
    cases = [  # (q, p, k, T, budget)
        (7, 5, 1, 6, RAISED_BUDGET),   # n = 0
        (7, 13, 1, 6, RAISED_BUDGET),  # n = 3
        (5, 7, 1, 5, None),            # n = 1
        (2, 5, 1, 10, None), (2, 7, 2, 10, None),
        (3, 5, 1, 7, None), (3, 7, 2, 7, None),
        (5, 5, 1, 5, None), (5, 5, 2, 5, None),
    ]
    items = failures = 0
    for q, p, k, T, budget in cases:
        for which in ("row", "column"):
            kw = {"budget": budget} if budget else {}
            report = verify_intermediate(q, p, k, which, T, **kw)
            items += len(report.items)
            failures += len(report.failures())
    # n = 0 and n = 3 give different axes but one local factor
    same = closed_local(7, 5, 1) == closed_local(7, 13, 1)
    _record(2, failures == 0 and same,
            f"row/column identities: {items - failures}/{items} coefficients exact; "
            f"n=0 and n=3 share the closed form: {same}")


def _per_pair_mismatches(c, q, r):
    mismatches = found = 0
    n = q ** (2 * r)
    for a in range(n):
        for b in range(n):
            f = BinaryCubicForm.from_params(a, b, c)
            system = enumerate_overorders(f, c, q, r)
            oracle = oracle_enumerate(f, c, q, r)
            found += len(oracle)
            mismatches += ({(o.rep, o.form) for o in system}
                           != {(o.rep, o.form) for o in oracle})
    return mismatches, found


def test_criterion_03_oracle_equivalence():
    start = time.perf_counter()
    mismatches = total = bulk_mismatches = 0
    for p in (5, 7):
        for k in (1, 2):
            for sign in SIGNS:
                c = SignedConstant(p, k, 1 if sign == "+" else -1)
                for q in (2, 3, 5):
                    for r in (1, 2):
                        bad, found = _per_pair_mismatches(c, q, r)
                        mismatches += bad
                        total += found
                # the vectorized tables behind the CLI command must agree as well
                report, _ = _cli(["oracle-diff", "--local-prime", "2", "3", "5", "--rmax", "2",
                                  "--const-prime", str(p), "--k", str(k), "--sign", sign])
                bulk_mismatches += sum(int(it["computed"]) for it in report.items
                                       if it["label"].endswith("mismatched pairs"))
    elapsed = time.perf_counter() - start
    _record(3, mismatches == 0 and bulk_mismatches == 0,
            f"enumerate_overorders vs oracle_enumerate, every (a, b) mod q^2r, q in 2,3,5, "
            f"r in 1,2, p in 5,7, k in 1,2, both signs: {mismatches} mismatching pairs over "
            f"{total} overorders; oracle-diff {bulk_mismatches}; {elapsed:.0f}s")


def test_criterion_04_euler_factorization():
    pairs = euler_pairs(200)
    failures = items = 0
    for argv in _euler_argvs():
        report, _ = _cli(argv + ["--workers", "1"])
        items += len(report.items)
        failures += len(report.failures())
    _record(4, failures == 0 and items == 2 * len(pairs),
            f"direct vs product, n f^2 <= 200, p in 5,7: {items - failures}/{items} equal")


PERIODIC = [(2, 1), (3, 1), (4, 1), (2, 2), (6, 1)]


def test_criterion_05_periodicity():
    results = [periodicity_check(n, f, SignedConstant(p, 1), 2)
               for p in (5, 7) for n, f in PERIODIC]
    _record(5, all(results), f"m=2 lifts constant mod n f^2: {sum(results)}/{len(results)}")


def test_criterion_06_sign_independence():
    checked = differing = 0
    for (p, k), primes in LOCAL_GRID.items():
        for q in primes:
            T = EXPECTED_T[q]
            for m in range(T + 1):
                for r in range(m // 2 + 1):
                    plus = kloosterman_value(LocalKey(q, m - 2 * r, r, p, k, 1))
                    minus = kloosterman_value(LocalKey(q, m - 2 * r, r, p, k, -1))
                    checked += 1
                    differing += plus != minus
    for q, p, k in ((7, 5, 1), (7, 13, 1)):
        for r in range(4):
            plus = kloosterman_value(LocalKey(q, 0, r, p, k, 1), RAISED_BUDGET)
            minus = kloosterman_value(LocalKey(q, 0, r, p, k, -1), RAISED_BUDGET)
            checked += 1
            differing += plus != minus
    for p in (5, 7):
        c = SignedConstant(p, 1)
        for n, f in euler_pairs(200):
            checked += 1
            differing += global_K(n, f, c) != global_K(n, f, c.negated())
        for n, f in [(6, 1), (2, 2), (3, 2), (12, 1)]:
            checked += 1
            differing += global_K_direct(n, f, c) != global_K_direct(n, f, c.negated())
        for n, f in PERIODIC:
            checked += 1
            differing += not periodicity_check(n, f, c.negated(), 2)
    _record(6, differing == 0, f"sign + vs -: {checked - differing}/{checked} entries identical")


def test_criterion_07_global_local_consistency():
    reports = [global_consistency(p, k) for p in (5, 7) for k in (1, 2, 3)]
    items = sum(len(r.items) for r in reports)
    bad = sum(len(r.failures()) for r in reports)
    _record(7, bad == 0, f"local closed forms vs global Euler factors: {items - bad}/{items}")


def test_criterion_08_trace_factor():
    pairs = [(p, k) for p in (2, 3, 5) for k in range(4)]
    good = [trivial_trace_factor(p, k) == trace_factor_series(p, k) for p, k in pairs]
    example = trivial_trace_factor(2, 1)
    _record(8, all(good) and example == trace_factor_series(2, 1) and str(example) == "7/2",
            f"closed vs series-coefficient oracle: {sum(good)}/{len(good)}; (2,1) -> {example}")


def test_criterion_09_analytic_constants():
    start = time.perf_counter()
    bounds = kernel_bounds_check()
    z = 1e-3
    mellin = abs(z * mellin_F_direct(z) - 1)
    target = 6 * math.sqrt(math.pi)
    pos = h_residue_constant(1, True)
    neg = h_residue_constant(1, False)
    elapsed = time.perf_counter() - start
    ok = (bounds.passed and mellin < 1e-2 and abs(pos - target) <= 1e-3 * target
          and abs(neg) <= 1e-3 and elapsed < 30)
    _record(9, ok, f"bounds {bounds.passed}, |zF~(z)-1|={mellin:.2e}, "
                   f"Pol>0 rel err {abs(pos - target) / target:.1e}, Pol<0 {abs(neg):.1e}, "
                   f"{elapsed:.1f}s")


def test_criterion_10_determinism():
    identical = runs = 0
    for argv in _local_argvs() + _euler_argvs():
        outputs = {_cli(argv + ["--workers", str(w)])[1] for w in (1, 4, 16)}
        runs += 1
        identical += len(outputs) == 1
        json.loads(outputs.pop())
    _record(10, identical == runs,
            f"criteria 1 and 4 with workers 1, 4, 16: {identical}/{runs} reports byte-identical")
