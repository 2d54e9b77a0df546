"""Selects the projected-gradient kernel backend at import time.

The compiled extension is preferred; the numpy implementation is the
fallback. Set the environment variable ONEBITREC_PURE_PYTHON to any
non-empty value before import to force the fallback.
"""
from __future__ import annotations

import os

from . import _pgd_py

if os.environ.get("ONEBITREC_PURE_PYTHON"):
    _impl = _pgd_py
else:
    try:
        from . import _pgd as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pgd_py

pgd_minimize = _impl.pgd_minimize

KERNEL_BACKEND: str = "python" if _impl is _pgd_py else "cython"

__all__ = ["pgd_minimize", "KERNEL_BACKEND"]
