"""Picks the compiled kernels when importable, else the pure-Python ones.

Setting ``HOMANTI_PURE_PYTHON=1`` forces the fallback (used by the benchmark
and by the tests that compare both back ends).
"""

import os

from . import _kernels_py

if os.environ.get("HOMANTI_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py
        BACKEND = "python"

bareiss_echelon = _impl.bareiss_echelon
modular_rank = _impl.modular_rank
