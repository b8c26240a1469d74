"""Pure-Python versions of the hot loops in ``_kernels.pyx``.

Both functions walk the integer box ``lo <= u <= hi`` and only differ in
what they record for each point.
"""

from __future__ import annotations

import itertools
from typing import Sequence


def box_points(G: Sequence[Sequence[int]], b: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> list[tuple[int, ...]]:
    """Points ``u`` of the box with ``G u >= b`` componentwise, in lex order."""
    rows = [tuple(r) for r in G]
    out = []
    for u in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        for row, bound in zip(rows, b):
            if sum(x * y for x, y in zip(row, u)) < bound:
                break
        else:
            out.append(u)
    return out


def sign_pattern_counts(R: Sequence[Sequence[int]], x0: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> dict[int, int]:
    """Histogram of ``mask(u) = {i : x0_i + R_i . u < 0}`` over the box."""
    rows = [tuple(r) for r in R]
    counts: dict[int, int] = {}
    for u in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        mask = 0
        for i, row in enumerate(rows):
            if x0[i] + sum(x * y for x, y in zip(row, u)) < 0:
                mask |= 1 << i
        counts[mask] = counts.get(mask, 0) + 1
    return counts
