"""numba kernels.  Same signatures and results as ``_numpy``."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def pagerank(indptr, indices, weights, teleport, damping, tol, max_iter):
    n = teleport.shape[0]
    out_w = np.zeros(n)
    for j in range(n):
        for k in range(indptr[j], indptr[j + 1]):
            out_w[j] += weights[k]
    r = np.full(n, 1.0 / n)
    new = np.empty(n)
    it = 0
    for it in range(1, max_iter + 1):
        dangling = 0.0
        new[:] = 0.0
        for j in range(n):
            if out_w[j] <= 0.0:
                dangling += r[j]
                continue
            share = r[j] / out_w[j]
            for k in range(indptr[j], indptr[j + 1]):
                new[indices[k]] += share * weights[k]
        err = 0.0
        for i in range(n):
            v = damping * (new[i] + dangling * teleport[i]) + (1.0 - damping) * teleport[i]
            err += abs(v - r[i])
            new[i] = v
        r, new = new, r
        if err < tol:
            break
    return r, it


@njit(cache=True)
def cooccurrence_pairs(node_ids, sentence_ids, window):
    n = node_ids.shape[0]
    cap = n * max(window - 1, 0)
    a = np.empty(cap, dtype=np.int64)
    b = np.empty(cap, dtype=np.int64)
    m = 0
    for i in range(n):
        u = node_ids[i]
        if u < 0:
            continue
        for j in range(i + 1, min(i + window, n)):
            if sentence_ids[j] != sentence_ids[i]:
                break
            v = node_ids[j]
            if v < 0 or v == u:
                continue
            if u < v:
                a[m] = u
                b[m] = v
            else:
                a[m] = v
                b[m] = u
            m += 1
    return a[:m].copy(), b[:m].copy()


@njit(cache=True)
def jaccard_distances(stem_ids):
    n, width = stem_ids.shape
    sizes = np.zeros(n)
    for i in range(n):
        for k in range(width):
            if stem_ids[i, k] >= 0:
                sizes[i] += 1.0
    D = np.empty((n, n))
    for i in range(n):
        D[i, i] = 0.0 if sizes[i] > 0 else 1.0
        for j in range(i + 1, n):
            inter = 0.0
            for x in range(width):
                sx = stem_ids[i, x]
                if sx < 0:
                    continue
                for y in range(width):
                    if stem_ids[j, y] == sx:
                        inter += 1.0
            union = sizes[i] + sizes[j] - inter
            d = 1.0 - inter / union if union > 0 else 1.0
            D[i, j] = d
            D[j, i] = d
    return D


@njit(cache=True)
def _row_min(D, i):
    n = D.shape[0]
    best = np.inf
    for k in range(i + 1, n):
        if D[i, k] < best:
            best = D[i, k]
    return best


@njit(cache=True)
def average_linkage(dist, threshold, eps):
    n = dist.shape[0]
    merges = np.empty((max(n - 1, 0), 3))
    if n < 2:
        return merges[:0]
    D = dist.copy()
    for i in range(n):
        D[i, i] = np.inf
    rowmin = np.empty(n)
    for i in range(n):
        rowmin[i] = _row_min(D, i)
    size = np.ones(n)
    m = 0
    while m < n - 1:
        best = np.inf
        for i in range(n):
            if rowmin[i] < best:
                best = rowmin[i]
        if not best <= threshold + eps:
            break
        a = 0
        for i in range(n):
            if rowmin[i] <= best + eps:
                a = i
                break
        b = a + 1
        for k in range(a + 1, n):
            if D[a, k] <= best + eps:
                b = k
                break
        merges[m, 0] = a
        merges[m, 1] = b
        merges[m, 2] = D[a, b]
        m += 1
        stale = np.zeros(n, dtype=np.bool_)
        for i in range(b):
            if (i < a and D[i, a] == rowmin[i]) or D[i, b] == rowmin[i]:
                stale[i] = True
        total = size[a] + size[b]
        for k in range(n):
            v = (size[a] * D[a, k] + size[b] * D[b, k]) / total
            D[a, k] = v
            D[k, a] = v
        D[a, a] = np.inf
        for k in range(n):
            D[b, k] = np.inf
            D[k, b] = np.inf
        size[a] = total
        rowmin[b] = np.inf
        stale[a] = True
        for i in range(a):
            if D[i, a] < rowmin[i]:
                rowmin[i] = D[i, a]
        for i in range(n):
            if stale[i]:
                rowmin[i] = _row_min(D, i)
    return merges[:m]


@njit(cache=True)
def inverse_distance_sums(positions, groups, n_groups):
    W = np.zeros((n_groups, n_groups))
    n = positions.shape[0]
    for i in range(n):
        gi = groups[i]
        pi = positions[i]
        for j in range(i + 1, n):
            d = abs(pi - positions[j])
            if d == 0:
                continue
            w = 1.0 / d
            gj = groups[j]
            W[gi, gj] += w
            W[gj, gi] += w
    return W
