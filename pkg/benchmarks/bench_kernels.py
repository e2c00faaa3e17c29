"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each kernel runs once per backend before timing so numba compilation is
excluded.  Outputs of the two backends are checked for agreement.
"""

import argparse
import json
import sys
import time

import numpy as np

from mdke import kernels


def _graph(rng, n, density):
    W = rng.random((n, n)) * (rng.random((n, n)) < density)
    W = np.triu(W, 1)
    W = W + W.T
    src, dst = np.nonzero(W)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst.astype(np.int64), W[src, dst], np.full(n, 1.0 / n)


def _stem_sets(rng, n, vocab):
    ids = np.full((n, 4), -1, dtype=np.int64)
    for i in range(n):
        k = int(rng.integers(1, 5))
        ids[i, :k] = np.sort(rng.choice(vocab, k, replace=False))
    return ids


def cases(rng):
    indptr, indices, weights, tele = _graph(rng, 2000, 0.01)
    nodes = rng.integers(-1, 800, 60_000).astype(np.int64)
    sents = np.sort(rng.integers(0, 3000, 60_000)).astype(np.int64)
    stems = _stem_sets(rng, 600, 400)
    dist = kernels.get_backend("numpy").jaccard_distances(stems)
    pos = rng.integers(0, 5000, 3000).astype(np.int64)
    grp = rng.integers(0, 200, 3000).astype(np.int64)
    return {
        "pagerank": lambda b: b.pagerank(indptr, indices, weights, tele, 0.85, 1e-10, 200),
        "cooccurrence_pairs": lambda b: b.cooccurrence_pairs(nodes, sents, 10),
        "jaccard_distances": lambda b: b.jaccard_distances(stems),
        "average_linkage": lambda b: b.average_linkage(dist, 0.75, 1e-9),
        "inverse_distance_sums": lambda b: b.inverse_distance_sums(pos, grp, 200),
    }


def _same(a, b, unordered=False):
    if unordered:  # pair lists: same multiset, order may differ between backends
        return sorted(zip(*(x.tolist() for x in a))) == sorted(zip(*(x.tolist() for x in b)))
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return a.shape == b.shape and np.allclose(a, b, atol=1e-9)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write timings here")
    args = ap.parse_args(argv)
    if not kernels.numba_available():
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1
    backends = {name: kernels.get_backend(name) for name in ("numpy", "numba")}
    results = []
    for name, fn in cases(np.random.default_rng(args.seed)).items():
        outputs = {b: fn(mod) for b, mod in backends.items()}  # warm-up and agreement check
        agree = _same(outputs["numpy"], outputs["numba"], unordered=name == "cooccurrence_pairs")
        row = {"kernel": name, "agree": bool(agree)}
        for b, mod in backends.items():
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                fn(mod)
                times.append(time.perf_counter() - t0)
            row[f"{b}_ms"] = 1000 * min(times)
        row["speedup"] = row["numpy_ms"] / row["numba_ms"] if row["numba_ms"] > 0 else float("inf")
        results.append(row)

    print("| kernel | numpy ms | numba ms | speedup | agree |")
    print("|---|---|---|---|---|")
    for r in results:
        print(f"| {r['kernel']} | {r['numpy_ms']:.2f} | {r['numba_ms']:.2f} | {r['speedup']:.1f}x | {r['agree']} |")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2)
    return 0 if all(r["agree"] for r in results) else 2


if __name__ == "__main__":
    sys.exit(main())
