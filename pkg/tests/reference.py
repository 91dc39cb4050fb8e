"""Slow, direct reference implementations used as test oracles."""
from itertools import combinations


def hoelder_sum(size, edges, labels=None, root=None):
    """Hölder's subset sum written out naively over explicit vertex sets."""
    verts = range(size)
    targets = {v: {j for i, j in edges if i == v} for v in verts}
    total = 0
    for k in range(size + 1):
        for subset in combinations(verts, k):
            chosen = set(subset)
            if root is not None and root not in chosen:
                continue
            term = 1
            for p in verts:
                if p in chosen:
                    continue
                v = len(targets[p] & chosen)
                if v == 0:
                    term = 0
                    break
                if v > 1:
                    term *= (labels[p] ** v - 1) // (labels[p] - 1)
            total += term
    return total


def minus_vertex(size, edges, labels, v):
    keep = [u for u in range(size) if u != v]
    remap = {old: new for new, old in enumerate(keep)}
    sub_edges = {(remap[i], remap[j]) for i, j in edges if v not in (i, j)}
    sub_labels = [labels[u] for u in keep] if labels else None
    return len(keep), sub_edges, sub_labels


def fibonacci(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a
