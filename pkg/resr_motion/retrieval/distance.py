# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Series distances used for retrieval.

``dtw_distance`` is the classic dynamic-programming alignment with local
cost ``|a_i - b_j|`` and steps (1,0), (0,1), (1,1), first samples aligned
with each other and last samples aligned with each other. The result is the
raw path cost, not divided by any length.
"""

import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike


def rescale_to_range(series: ArrayLike, target_min: float, target_max: float) -> np.ndarray:
    """Affinely map ``series`` onto ``[target_min, target_max]``.

    A constant series maps to the midpoint of the target range; a degenerate
    target range maps everything to ``target_min``.
    """
    values = np.asarray(series, dtype=float)
    if values.size == 0:
        raise ValueError("cannot rescale an empty series")
    if target_max == target_min:
        return np.full(values.shape, float(target_min))
    low = values.min()
    high = values.max()
    if high == low:
        return np.full(values.shape, (target_min + target_max) / 2.0)
    return (target_max - target_min) * (values - low) / (high - low) + target_min


def _band_width(n: int, m: int, band: Optional[int]) -> Optional[int]:
    if band is None:
        return None
    if band < 0:
        raise ValueError(f"band must be non-negative, got {band}")
    # the band has to reach the corner cell
    return max(band, abs(n - m))


def dtw_distance(a: ArrayLike, b: ArrayLike, band: Optional[int] = None) -> float:
    """DTW distance between two non-empty series.

    Args:
        a: First series
        b: Second series
        band: Sakoe-Chiba half-width in samples; ``None`` disables it

    Returns:
        Minimum summed ``|a_i - b_j|`` over warping paths
    """
    x = [float(v) for v in np.asarray(a, dtype=float).ravel()]
    y = [float(v) for v in np.asarray(b, dtype=float).ravel()]
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        raise ValueError("dtw_distance needs non-empty series")
    width = _band_width(n, m, band)

    inf = math.inf
    previous = [inf] * (m + 1)
    previous[0] = 0.0
    for i in range(1, n + 1):
        current = [inf] * (m + 1)
        xi = x[i - 1]
        if width is None:
            lo, hi = 1, m
        else:
            lo, hi = max(1, i - width), min(m, i + width)
        for j in range(lo, hi + 1):
            best = previous[j - 1]
            if previous[j] < best:
                best = previous[j]
            if current[j - 1] < best:
                best = current[j - 1]
            current[j] = abs(xi - y[j - 1]) + best
        previous = current
    return previous[m]


def euclidean_distance(a: ArrayLike, b: ArrayLike) -> float:
    """Point-wise L2 distance; both series must have the same length."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return float(np.sqrt(np.sum((x - y) ** 2)))

