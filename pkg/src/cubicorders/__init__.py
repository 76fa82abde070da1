"""Exact overorder enumeration, Kloosterman-type sums and local zeta identities
for the cubic orders Z[X]/(X^3 - aX^2 + bX - c) with c = +-p^k."""

from .arith import ParameterError
from .cubic import BinaryCubicForm, Matrix2, SignedConstant, SplittingType
from .kernel import BACKEND
from .kloosterman import LocalKey, ResourceError, global_K, global_K_direct, local_K

__version__ = "0.1.0"

__all__ = ["BACKEND", "BinaryCubicForm", "LocalKey", "Matrix2", "ParameterError",
           "ResourceError", "SignedConstant", "SplittingType", "global_K",
           "global_K_direct", "local_K"]
