"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``CELLALG_PURE=1`` to force the fallback (used by the benchmark and by
the kernel parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CELLALG_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

compose_partitions = _impl.compose_partitions
rref_modp = _impl.rref_modp
COMPILED = _impl is not _kernels_py

__all__ = ["compose_partitions", "rref_modp", "COMPILED"]
