"""Cross-check of the classifier against exact counts over a range of orders."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .classifier import CLASSIFIED, classify, shards
from .cubefree import count


def _check_range(bounds: tuple[int, int]) -> tuple[Counter, Counter, list]:
    lo, hi = bounds
    per_k: Counter = Counter()
    skipped: Counter = Counter()
    bad = []
    for n in range(lo, hi + 1):
        res = count(n)
        if not res.exact:
            skipped[res.reason] += 1
            continue
        expected = res.value if res.value in CLASSIFIED else None
        got = classify(n).k
        if got != expected:
            bad.append((n, res.value, got))
        per_k[expected if expected is not None else "other"] += 1
    return per_k, skipped, bad


def cross_check(max_n: int, jobs: int = 1) -> dict:
    """Compare classify(n).k with count(n) for every n <= max_n where count is exact."""
    tasks = shards(1, max_n, jobs)
    if jobs <= 1:
        results = list(map(_check_range, tasks))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_range, tasks))
    per_k: Counter = Counter()
    skipped: Counter = Counter()
    bad: list = []
    for a, b, c in results:
        per_k.update(a)
        skipped.update(b)
        bad.extend(c)
    return {
        "max": max_n,
        "per_k": {str(k): per_k[k] for k in list(CLASSIFIED) + ["other"]},
        "skipped": dict(sorted(skipped.items())),
        "disagreements": [{"n": n, "count": c, "classify": k} for n, c, k in bad],
    }
