"""Backend selection for the elimination kernels.

The compiled extension ``gnc._kernels`` is used when it imports; otherwise, or
when ``GNC_PURE_PYTHON`` is set to a non-empty value, the pure-Python twin is
used. Both expose ``rank_exact`` and ``rank_mod_p`` with identical results.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GNC_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

# Largest prime below 2**31; keeps products inside 64 bits in the compiled path.
PRIME = 2147483647


def rank_exact(rows: list[list[int]], ncols: int) -> int:
    try:
        return _impl.rank_exact(rows, ncols)
    except OverflowError:
        return _kernels_py.rank_exact(rows, ncols)


def rank_mod_p(rows: list[list[int]], ncols: int, p: int = PRIME) -> int:
    return _impl.rank_mod_p(rows, ncols, p)
