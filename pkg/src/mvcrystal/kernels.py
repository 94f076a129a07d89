"""Selects the compiled crystal kernels when available, the NumPy fallback otherwise.

Set ``MVCRYSTAL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("MVCRYSTAL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

tensor_edges = _impl.tensor_edges
component_labels = _impl.component_labels
