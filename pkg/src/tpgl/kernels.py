"""Backend selection for the minor-enumeration kernels.

Prefers the compiled extension when it was built; setting the
environment variable ``TPGL_PURE_PYTHON=1`` forces the pure twin.
``backend_name()`` reports which one is active.
"""
from __future__ import annotations

import os

from tpgl import _minors_py

if os.environ.get("TPGL_PURE_PYTHON") == "1":
    _impl = _minors_py
else:
    try:
        from tpgl import _minors_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _minors_py

det_int = _impl.det_int
scan_total_positivity = _impl.scan_total_positivity
scan_solid_positivity = _impl.scan_solid_positivity
scan_unitriangular = _impl.scan_unitriangular


def backend_name() -> str:
    return _impl.BACKEND
