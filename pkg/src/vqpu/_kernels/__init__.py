"""State-vector kernel selection.

The engine calls the hot inner loops through ``active``; at import time this
binds to the compiled extension when it is available and to the numpy
fallback otherwise. Set ``VQPU_PURE_PYTHON=1`` to force the fallback.
Both implementations share one call surface (see ``fallback.py``).
"""

from __future__ import annotations

import os

from . import fallback

try:
    from . import _statevec as _compiled
except ImportError:
    _compiled = None

if _compiled is not None and not os.environ.get("VQPU_PURE_PYTHON"):
    active = _compiled
else:
    active = fallback


def implementation() -> str:
    """Name of the kernel set in use: 'cython' or 'python'."""
    return "cython" if active is _compiled and _compiled is not None else "python"
