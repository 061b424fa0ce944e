"""Kernel selection: compiled extension if built, NumPy fallback otherwise.

Set LCONGR_PURE_PY=1 to force the fallback (used by the benchmark and by
tests that compare the two backends).
"""

from __future__ import annotations

import os

if os.environ.get("LCONGR_PURE_PY"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
ap_single = _impl.ap_single
ap_sweep = _impl.ap_sweep
quartic_root_count = _impl.quartic_root_count
quartic_root_count_sweep = _impl.quartic_root_count_sweep
