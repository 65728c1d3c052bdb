"""Kernel backend selection.

The compiled extension is preferred; the pure Python twin is used when the
extension is missing or when ``SHRINKLAB_PURE_PYTHON=1`` is set.  Both expose
``integrate_radial``, ``polyline_min_distance``, ``BACKEND`` and the STATUS_*
codes.
"""

import os

from . import _kernels_py

if os.environ.get("SHRINKLAB_PURE_PYTHON", "") == "1":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py


def backend_name():
    """Name of the active kernel backend ("cython" or "python")."""
    return kernels.BACKEND
