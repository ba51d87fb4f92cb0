"""Kernel backend selection.

The compiled extension is used when it was built; setting
``LAURENTCC_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("LAURENTCC_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

vec_mul = _impl.vec_mul
series_mul = _impl.series_mul
