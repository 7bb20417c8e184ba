"""Kernel backend selection.

The compiled extension is used when it was built; otherwise (or when
``CONSIM_PURE_PYTHON`` is set to a non-empty value) the pure-Python twin is
used.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("CONSIM_PURE_PYTHON"):
    _impl = _kernel_py
    BACKEND = "python"
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernel_py
        BACKEND = "python"

cmatmul = _impl.cmatmul
rref = _impl.rref

__all__ = ["BACKEND", "cmatmul", "rref"]
