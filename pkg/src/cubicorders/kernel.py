"""Census kernel dispatch.

The compiled extension is used when it imports; otherwise the numpy kernel.
Set ``CUBICORDERS_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernel_py

try:
    if os.environ.get("CUBICORDERS_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"

# products inside the kernel stay below 4 q^(M + 2r)
_INT64_LIMIT = 2**62


def fits_int64(q, r, M):
    return 4 * q ** (M + 2 * r) + q ** (3 * r) < _INT64_LIMIT


def census(q, c, r, M, table=b"", a_lo=0, a_hi=None, backend=None, only_beta=-1):
    """Overorder census over (a, b) mod q^M, a restricted to [a_lo, a_hi).

    Returns six counts indexed by SplittingType when ``table`` is given,
    otherwise a one-element list with the total number of solutions.
    ``only_beta`` restricts to a single beta stratum.
    """
    if a_hi is None:
        a_hi = q**M
    if not fits_int64(q, r, M):
        raise OverflowError(f"census q={q} r={r} M={M} exceeds the 64-bit kernel range")
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernel is None:
            raise ImportError("compiled kernel not built")
        return _ckernel.census(q, c, r, M, bytes(table), a_lo, a_hi, only_beta)
    return _kernel_py.census(q, c, r, M, table, a_lo, a_hi, only_beta)
