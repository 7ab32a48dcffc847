"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it was built; otherwise
the pure-Python ``_kernels_py`` module is used. Setting ``TWOLEVEL_PURE=1``
forces the pure-Python path.
"""

import os

if os.environ.get("TWOLEVEL_PURE", "") not in ("", "0"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

descending = _impl.descending
wtp = _impl.wtp
winners_count = _impl.winners_count
best_assignment = _impl.best_assignment
single_item = _impl.single_item
subset_dp = _impl.subset_dp

__all__ = ["BACKEND", "descending", "wtp", "winners_count", "best_assignment", "single_item", "subset_dp"]
