"""Acceptance criteria 1-7, one test per criterion.

Each test records a PASS/FAIL line with its runtime; the lines are printed in
the pytest terminal summary (see conftest.py), or directly when this file is
run as a script.
"""
import math
import random
import time

from grouporders.arithmetic import factorize
from grouporders.census import census
from grouporders.classifier import rules, classify
from grouporders.cubefree import count
from grouporders.graph import build_graph, central_masks
from grouporders.holder import AbstractGraph, g_holder, splice
from grouporders.patterns import realize
from grouporders.verify import cross_check

from reference import fibonacci, hoelder_sum, minus_vertex

RESULTS: dict[int, str] = {}


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        RESULTS[self.number] = f"criterion {self.number} FAIL  {self.title} (did not finish)"
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        why = "" if exc_type is None else f" [{exc_type.__name__}: {exc}]"
        if exc_type is None and not ok:
            why = f" [over the {self.limit:g} s limit]"
        RESULTS[self.number] = (
            f"criterion {self.number} {'PASS' if ok else 'FAIL'}  {self.title}  "
            f"{elapsed:.2f}s{(' ' + self.detail) if self.detail else ''}{why}"
        )
        if exc_type is None:
            assert ok, RESULTS[self.number]
        return False


def test_criterion_1_reference_orders():
    expected = {1827: 6, 7575: 6, 32661: 7, 101695: 5, 12615: 5, 825: 5, 12425: 8}
    with Criterion(1, "reference p^2 q r orders", 1.0) as c:
        got = {n: count(n).value for n in expected}
        assert got == expected, got
        c.detail = f"({len(expected)} orders)"


def test_criterion_2_formula_spot_values():
    expected = {147: 6, 75: 3, 18: 5, 375: 7, 2601: 7, 45: 2, 225: 6, 351: 14, 1225: 4}
    with Criterion(2, "closed-form spot values", 60.0) as c:
        got = {n: count(n).value for n in expected}
        assert got == expected, got
        c.detail = f"({len(expected)} orders)"


def _independent(a: int, b: int) -> bool:
    if math.gcd(a, b) != 1:
        return False
    return len(build_graph(a * b).edges) == len(build_graph(a).edges) + len(build_graph(b).edges)


def test_criterion_3_hoelder_consistency():
    with Criterion(3, "Hölder sum vs central subsets; multiplicativity", 60.0) as c:
        regular = 0
        squarefree = []
        for n in range(1, 10**5 + 1):
            f = factorize(n)
            if not f.is_squarefree():
                continue
            squarefree.append(n)
            g = build_graph(f)
            out = g.out_masks()
            if all(m.bit_count() <= 1 for m in out):
                regular += 1
                assert g_holder(g) == len(central_masks(out)), n
        rng = random.Random(20261018)
        pairs = 0
        while pairs < 500:
            a, b = rng.choice(squarefree), rng.choice(squarefree)
            if a * b == 1 or not _independent(a, b):
                continue
            assert g_holder(build_graph(a * b)) == g_holder(build_graph(a)) * g_holder(build_graph(b)), (a, b)
            pairs += 1
        c.detail = f"({regular} regular orders, {pairs} pairs)"


def _random_regular_dag(rng: random.Random, max_size: int = 8) -> AbstractGraph:
    size = rng.randint(1, max_size)
    perm = list(range(size))
    rng.shuffle(perm)
    edges = set()
    for i in range(size - 1):
        if rng.random() < 0.7:
            edges.add((perm[i], perm[rng.randint(i + 1, size - 1)]))
    return AbstractGraph.from_edges(size, edges)


def test_criterion_4_splice_identity():
    with Criterion(4, "splice identity and Fibonacci paths", 10.0) as c:
        rng = random.Random(4)
        for _ in range(200):
            gamma, lam = _random_regular_dag(rng), _random_regular_dag(rng)
            q = rng.choice([v for v in range(gamma.size) if gamma.out_degree(v) == 0])
            p = rng.randrange(lam.size)
            lhs = g_holder(splice(gamma, q, lam, p))
            rhs = (hoelder_sum(gamma.size, gamma.edges) * hoelder_sum(lam.size, lam.edges)
                   + hoelder_sum(*minus_vertex(gamma.size, gamma.edges, None, q))
                   * hoelder_sum(lam.size, lam.edges, root=p))
            assert lhs == rhs, (gamma, q, lam, p)
        for k in range(1, 21):
            assert g_holder(AbstractGraph.path(k)) == fibonacci(k + 1), k
        c.detail = "(200 pairs, k <= 20)"


def test_criterion_5_classification_cross_validation():
    with Criterion(5, "classify vs count for n <= 10^5", 300.0) as c:
        summary = cross_check(10**5, jobs=1)
        assert summary["disagreements"] == [], summary["disagreements"][:20]
        assert all(summary["per_k"][str(k)] > 0 for k in (1, 2, 3, 6, 7))
        c.detail = "(" + ", ".join(f"g={k}: {v}" for k, v in summary["per_k"].items()) + ")"


def test_criterion_6_census():
    expected = {
        (6, "Q", ()), (6, "triangle", (2,)),
        (7, "star", (5,)), (7, "star+tail", (3,)), (7, "triangle", (3,)),
    }
    with Criterion(6, "square-free census, <= 5 vertices", 30.0) as c:
        report = census(5, 2, 2, (6, 7))
        got = {(e.g, e.name, tuple(sorted((e.labels or {}).values()))) for e in report.entries}
        assert len(report.entries) == len(got) == 5
        assert got == expected, got
        label_free = [e.name for e in report.entries if not e.labels]
        assert label_free == ["Q"]
        c.detail = "(" + ", ".join(sorted(f"{name}{list(lab) or ''}={g}" for g, name, lab in got)) + ")"


def test_criterion_7_realizability():
    with Criterion(7, "every clause has a witness", 120.0) as c:
        clauses = [r for r in rules() if r.target_k in (6, 7) and r.id.startswith("T")]
        assert len(clauses) == 16
        witnesses = {}
        for r in clauses:
            for v in r.variants:
                found = realize(v.pattern, 10**7)
                assert found is not None, r.variant_id(v)
                n, _ = found
                assert classify(n).k == r.target_k, (r.variant_id(v), n)
                witnesses[r.variant_id(v)] = n
        c.detail = f"({len(clauses)} clauses, {len(witnesses)} variants, largest witness {max(witnesses.values())})"


if __name__ == "__main__":
    import sys
    tests = [f for name, f in sorted(globals().items()) if name.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    for k in sorted(RESULTS):
        print(RESULTS[k])
    sys.exit(1 if failed else 0)
