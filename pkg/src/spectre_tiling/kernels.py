"""Exact polygon predicates, compiled when available.

``BACKEND`` is ``"cython"`` when the extension module built, ``"python"``
otherwise. Set ``SPECTRE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SPECTRE_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

polygons_overlap = _impl.polygons_overlap
overlapping_pairs = _impl.overlapping_pairs
