"""Hot numeric kernels with a compiled core and a pure-Python fallback.

Importing this package never fails because of a missing or broken
extension: if ``_traveling_cy`` cannot be loaded the numpy implementation
takes over transparently.  Set ``VKWAVE_PURE_PYTHON=1`` before import to
force the fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _traveling_py

if os.environ.get("VKWAVE_PURE_PYTHON") == "1":
    _impl = _traveling_py
else:
    try:
        from . import _traveling_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _traveling_py

traveling_jet_fill = _impl.traveling_jet_fill


def backend() -> str:
    """Which implementation is active: ``"compiled"`` or ``"python"``."""
    return "python" if _impl is _traveling_py else "compiled"
