"""Backend selection for the box-scanning kernels.

The compiled extension is used when it imports and the inputs are safely
inside int64; otherwise the pure-Python code runs. Set
``TORIC_COX_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _kernels_py

try:
    if os.environ.get("TORIC_COX_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _fast  # type: ignore[attr-defined]
except ImportError:
    _fast = None

BACKEND = "cython" if _fast is not None else "python"

_LIMIT = 1 << 60


def _fits(mats: Sequence[Sequence[Sequence[int]]], offsets: Sequence[int], lo, hi) -> bool:
    if len(lo) == 0 or any(len(m) > 62 for m in mats):
        return False
    radius = max([abs(x) for x in lo] + [abs(x) for x in hi] + [1])
    for m in mats:
        for row in m:
            if sum(abs(x) for x in row) * radius + max([abs(x) for x in offsets] + [0]) >= _LIMIT:
                return False
    return True


def box_points(G, b, lo, hi) -> list[tuple[int, ...]]:
    if _fast is not None and _fits([G], b, lo, hi):
        return _fast.box_points(G, b, lo, hi)
    return _kernels_py.box_points(G, b, lo, hi)


def sign_pattern_counts(R, x0, lo, hi) -> dict[int, int]:
    if _fast is not None and _fits([R], x0, lo, hi):
        return _fast.sign_pattern_counts(R, x0, lo, hi)
    return _kernels_py.sign_pattern_counts(R, x0, lo, hi)
