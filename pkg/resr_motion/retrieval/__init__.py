# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Shape-based retrieval of bank equations for one trajectory axis."""

from .distance import dtw_distance, euclidean_distance, rescale_to_range
from .retrieve import (
    DEFAULT_METRIC,
    METRICS,
    EmptyBankRetrievalError,
    RankedEntry,
    RetrievalError,
    RetrievalQuery,
    RetrievalResult,
    retrieve_axes,
    retrieve_top_k,
    score_entry,
)

__all__ = [
    "dtw_distance",
    "euclidean_distance",
    "rescale_to_range",
    "DEFAULT_METRIC",
    "METRICS",
    "EmptyBankRetrievalError",
    "RankedEntry",
    "RetrievalError",
    "RetrievalQuery",
    "RetrievalResult",
    "retrieve_axes",
    "retrieve_top_k",
    "score_entry",
]
