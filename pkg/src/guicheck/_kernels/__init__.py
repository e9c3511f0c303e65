"""Hot loops of the solver: pairwise join, feasibility filter, bounding boxes.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` is used. Set ``GUICHECK_PURE_PYTHON=1`` to force
the fallback.
"""

import os

from . import _pykernels

if os.environ.get("GUICHECK_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

join = _impl.join
feasible = _impl.feasible
box_keys = _impl.box_keys

__all__ = ["BACKEND", "join", "feasible", "box_keys"]
