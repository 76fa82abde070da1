import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cubicorders import kernel
from cubicorders.cubic import SplittingType, splitting_type, type_table
from cubicorders.overorders import solve_system, system_solution_table, transformed_form

needs_cython = pytest.mark.skipif(kernel._ckernel is None, reason="compiled kernel not built")

CASES = [(2, 5, 1, 3), (2, 7, 2, 5), (3, 5, 1, 3), (3, 25, 2, 5), (5, 7, 1, 3), (2, 5, 3, 7),
         (3, 7, 3, 7), (7, 5, 1, 3)]


def _brute_census(q, c, r, M):
    counts = [0] * 6
    n = q**M
    for a, b in itertools.product(range(n), repeat=2):
        for rep in solve_system(a, b, c, q, r):
            counts[splitting_type(transformed_form(a, b, c, q, rep), q)] += 1
    return counts


@pytest.mark.parametrize("q, c, r, M", [(2, 5, 1, 3), (3, 5, 1, 3), (2, -7, 2, 5)])
def test_census_matches_brute_force(q, c, r, M):
    expected = _brute_census(q, c, r, M)
    for backend in ("python", "cython") if kernel._ckernel else ("python",):
        assert kernel.census(q, c % q**M, r, M, type_table(q), backend=backend) == expected


@pytest.mark.parametrize("q, r", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_count_path_matches_system_table(q, r):
    for c in (5, -5, 49):
        expected = int(system_solution_table(c, q, r).sum())
        assert kernel.census(q, c % q ** (2 * r), r, 2 * r, backend="python") == [expected]


@needs_cython
@pytest.mark.parametrize("q, c, r, M", CASES)
def test_backends_agree(q, c, r, M):
    table = type_table(q)
    assert (kernel.census(q, c, r, M, table, backend="cython")
            == kernel.census(q, c, r, M, table, backend="python"))
    assert (kernel.census(q, c, r, M, backend="cython")
            == kernel.census(q, c, r, M, backend="python"))
    for beta in range(r // 3 + 1):
        assert (kernel.census(q, c, r, M, table, backend="cython", only_beta=beta)
                == kernel.census(q, c, r, M, table, backend="python", only_beta=beta))


@settings(max_examples=40)
@given(st.sampled_from(CASES), st.lists(st.floats(0, 1), max_size=5))
def test_partition_invariance(case, cuts):
    q, c, r, M = case
    Q = q**M
    table = type_table(q)
    bounds = sorted({0, Q, *(int(x * Q) for x in cuts)})
    whole = kernel.census(q, c, r, M, table)
    parts = [kernel.census(q, c, r, M, table, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    assert [sum(col) for col in zip(*parts)] == whole


def test_beta_strata_partition_the_census():
    q, c, r, M = 2, 5, 3, 7
    table = type_table(q)
    strata = [kernel.census(q, c, r, M, table, only_beta=b) for b in range(2)]
    assert [x + y for x, y in zip(*strata)] == kernel.census(q, c, r, M, table)


def test_guards():
    with pytest.raises(ValueError):
        kernel.census(2, 5, 2, 3, backend="python")
    with pytest.raises(OverflowError):
        kernel.census(31, 5, 4, 9)
    assert kernel.fits_int64(2, 4, 9)


def test_q2_beta0_has_only_ramified_types():
    counts = kernel.census(2, 5, 1, 3, type_table(2))
    assert sum(counts) > 0
    for t in (SplittingType.S111, SplittingType.S12, SplittingType.S3):
        assert counts[t] == 0


def test_fallback_selected_at_import():
    import os
    import subprocess
    import sys
    env = dict(os.environ, CUBICORDERS_PURE_PYTHON="1")
    proc = subprocess.run([sys.executable, "-c", "import cubicorders; print(cubicorders.BACKEND)"],
                          capture_output=True, text=True, env=env)
    assert proc.stdout.strip() == "python"
