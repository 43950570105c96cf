"""Kernel selection: compiled extension when importable, else pure Python.

Set ``QDESIGNS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("QDESIGNS_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        kernels = _pykernels

BACKEND = "cython" if kernels is not _pykernels else "python"
