"""Pure-numpy kernels.  Same signatures and results as ``_numba``."""

from __future__ import annotations

import numpy as np

_CHUNK = 1024


def pagerank(indptr, indices, weights, teleport, damping, tol, max_iter):
    """Power-iteration PageRank over a CSR graph whose rows are edge sources.

    Mass of nodes without outgoing weight is redistributed along ``teleport``.
    Returns ``(ranks, iterations)``; stops when the L1 change drops below ``tol``.
    """
    n = teleport.shape[0]
    src = np.repeat(np.arange(n), np.diff(indptr))
    out_w = np.bincount(src, weights=weights, minlength=n).astype(np.float64)
    dangling = out_w <= 0.0
    safe = np.where(dangling, 1.0, out_w)
    norm = weights / safe[src]
    r = np.full(n, 1.0 / n)
    it = 0
    for it in range(1, max_iter + 1):
        spread = np.bincount(indices, weights=r[src] * norm, minlength=n)
        new = damping * (spread + r[dangling].sum() * teleport) + (1.0 - damping) * teleport
        err = np.abs(new - r).sum()
        r = new
        if err < tol:
            break
    return r, it


def cooccurrence_pairs(node_ids, sentence_ids, window):
    """``(a, b)`` with ``a < b`` for every pair of distinct nodes within ``window`` tokens in one sentence."""
    a_parts, b_parts = [], []
    for d in range(1, window):
        if d >= node_ids.shape[0]:
            break
        left, right = node_ids[:-d], node_ids[d:]
        mask = (
            (left >= 0)
            & (right >= 0)
            & (left != right)
            & (sentence_ids[:-d] == sentence_ids[d:])
        )
        a_parts.append(np.minimum(left[mask], right[mask]))
        b_parts.append(np.maximum(left[mask], right[mask]))
    if not a_parts:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    return (
        np.concatenate(a_parts).astype(np.int64),
        np.concatenate(b_parts).astype(np.int64),
    )


def jaccard_distances(stem_ids):
    """Pairwise ``1 - |A & B| / |A | B|`` over rows of unique ids padded with -1."""
    n, width = stem_ids.shape
    sizes = (stem_ids >= 0).sum(axis=1).astype(np.float64)
    inter = np.zeros((n, n))
    for i in range(width):
        col_i = stem_ids[:, i]
        for j in range(width):
            col_j = stem_ids[:, j]
            inter += (col_i[:, None] == col_j[None, :]) & (col_i[:, None] >= 0)
    union = sizes[:, None] + sizes[None, :] - inter
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(union > 0, inter / union, 0.0)
    return 1.0 - sim


def average_linkage(dist, threshold, eps):
    """Greedy average-linkage merges while the closest pair is within ``threshold``.

    Each step merges the lexicographically lowest slot pair whose distance is
    within ``eps`` of the current minimum; the merged cluster keeps the lower
    slot.  Returns ``(m, 3)`` rows of ``(slot_a, slot_b, height)``.
    """
    D = np.array(dist, dtype=np.float64, copy=True)
    n = D.shape[0]
    merges = np.empty((max(n - 1, 0), 3))
    if n < 2:
        return merges[:0]
    np.fill_diagonal(D, np.inf)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    rowmin = np.where(upper, D, np.inf).min(axis=1)
    size = np.ones(n)
    m = 0
    while m < n - 1:
        best = rowmin.min()
        if not best <= threshold + eps:
            break
        a = int(np.flatnonzero(rowmin <= best + eps)[0])
        b = a + 1 + int(np.flatnonzero(D[a, a + 1 :] <= best + eps)[0])
        merges[m] = (a, b, D[a, b])
        m += 1
        old_a = D[:a, a].copy()
        old_b = D[:b, b].copy()
        new = (size[a] * D[a] + size[b] * D[b]) / (size[a] + size[b])
        D[a, :] = new
        D[:, a] = new
        D[a, a] = np.inf
        D[b, :] = np.inf
        D[:, b] = np.inf
        size[a] += size[b]
        rowmin[b] = np.inf
        # Rows whose minimum sat in column a or b are recomputed; others can
        # only improve through the new column a.
        stale = np.zeros(n, dtype=bool)
        stale[:a] |= old_a == rowmin[:a]
        stale[:b] |= old_b == rowmin[:b]
        stale[a] = True
        stale[b] = False
        rowmin[:a] = np.minimum(rowmin[:a], D[:a, a])
        for i in np.flatnonzero(stale):
            rowmin[i] = D[i, i + 1 :].min() if i + 1 < n else np.inf
    return merges[:m]


def inverse_distance_sums(positions, groups, n_groups):
    """``W[g, h] = sum 1/|p - q|`` over occurrence pairs with ``p != q``, ``p`` in group g, ``q`` in h."""
    order = np.argsort(groups, kind="stable")
    pos = positions[order].astype(np.float64)
    grp = groups[order]
    W = np.zeros((n_groups, n_groups))
    if pos.shape[0] == 0:
        return W
    starts = np.flatnonzero(np.r_[True, grp[1:] != grp[:-1]])
    present = grp[starts]
    for s in range(0, pos.shape[0], _CHUNK):
        e = min(s + _CHUNK, pos.shape[0])
        diff = np.abs(pos[s:e, None] - pos[None, :])
        with np.errstate(divide="ignore"):
            K = np.where(diff > 0, 1.0 / diff, 0.0)
        by_col = np.add.reduceat(K, starts, axis=1)
        block = np.zeros((e - s, n_groups))
        block[:, present] = by_col
        np.add.at(W, grp[s:e], block)
    return W
