"""Vertex enumeration for normal surface solution cones.

The adjacency test in the double description step is the hot loop.  It is
served by a compiled extension when one was built and by a pure-Python
module otherwise; set ``QNORMAL_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

try:
    from . import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

if _kernel_c is not None and not os.environ.get("QNORMAL_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def _select_kernel(name=None):
    name = name or BACKEND
    if name == "cython":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel is not available")
        return _kernel_c.adjacent_pairs
    if name == "python":
        return _kernel_py.adjacent_pairs
    raise ValueError(f"unknown kernel {name!r}")


def available_kernels():
    return ["python"] + (["cython"] if _kernel_c is not None else [])


from .dd import (  # noqa: E402
    DEFAULT_MAX_RAYS,
    EnumerationResult,
    RayLimitError,
    VertexSolution,
    enumerate_dd,
)
from .oracle import DEFAULT_ORACLE_LIMIT, OracleLimitError, enumerate_bruteforce  # noqa: E402

__all__ = [
    "BACKEND",
    "DEFAULT_MAX_RAYS",
    "DEFAULT_ORACLE_LIMIT",
    "EnumerationResult",
    "OracleLimitError",
    "RayLimitError",
    "VertexSolution",
    "available_kernels",
    "enumerate_bruteforce",
    "enumerate_dd",
]
