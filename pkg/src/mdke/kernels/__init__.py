"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The numba backend is used when numba imports cleanly and the environment
variable ``MDKE_DISABLE_NUMBA`` is unset, empty or ``0``.  Both backends are
importable side by side through :func:`get_backend` for testing and
benchmarking.
"""

from __future__ import annotations

import importlib.util
import os
from types import ModuleType

import numpy as np

from . import _numpy

DISABLE_ENV = "MDKE_DISABLE_NUMBA"


def numba_available() -> bool:
    return importlib.util.find_spec("numba") is not None


def get_backend(name: str) -> ModuleType:
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(f"unknown kernel backend {name!r}")


def _select() -> str:
    if os.environ.get(DISABLE_ENV, "").strip() not in ("", "0"):
        return "numpy"
    return "numba" if numba_available() else "numpy"


BACKEND = _select()
_impl = get_backend(BACKEND)

cooccurrence_pairs = _impl.cooccurrence_pairs
jaccard_distances = _impl.jaccard_distances
inverse_distance_sums = _impl.inverse_distance_sums


def pagerank(indptr, indices, weights, teleport, damping=0.85, tol=1e-6, max_iter=100):
    """Dtype-normalising wrapper around the backend PageRank."""
    return _impl.pagerank(
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        np.ascontiguousarray(weights, dtype=np.float64),
        np.ascontiguousarray(teleport, dtype=np.float64),
        float(damping),
        float(tol),
        int(max_iter),
    )


def average_linkage(dist, threshold, eps=1e-9):
    """Merges of greedy average-linkage clustering up to a distance threshold."""
    return _impl.average_linkage(
        np.ascontiguousarray(dist, dtype=np.float64), float(threshold), float(eps)
    )


def cut_tree(merges: np.ndarray, n: int, threshold: float) -> np.ndarray:
    """Flat cluster labels from merges with height <= threshold.

    Labels are numbered by each cluster's lowest member index.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, h in merges:
        if h <= threshold:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    labels = np.empty(n, dtype=np.int64)
    ids: dict[int, int] = {}
    for i in range(n):
        labels[i] = ids.setdefault(find(i), len(ids))
    return labels


__all__ = [
    "BACKEND",
    "DISABLE_ENV",
    "average_linkage",
    "cooccurrence_pairs",
    "cut_tree",
    "get_backend",
    "inverse_distance_sums",
    "jaccard_distances",
    "numba_available",
    "pagerank",
]
