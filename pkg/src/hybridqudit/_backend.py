"""Kernel selection: compiled Cython extension if importable, numpy otherwise.

Set ``HQ_PURE_PYTHON=1`` before import to force the numpy kernels.
"""

import os

from . import _pykernels as python_kernels

try:
    if os.environ.get("HQ_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as compiled_kernels
except ImportError:
    compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "compiled" if compiled_kernels is not None else "python"
