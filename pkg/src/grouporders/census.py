"""Exhaustive census of small Hölder graphs.

Enumerates weakly connected DAGs up to isomorphism under in/out-degree
bounds, evaluates g on each (sweeping prime labels where the count depends
on them), and realizes abstract shapes as concrete square-free integers.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .arithmetic import factorize
from .graph import weak_components
from .holder import AbstractGraph, g_holder
from .patterns import PLAIN, Pattern, realize as realize_pattern

LABEL_PRIMES = (2, 3, 5, 7, 11, 13)


def _degree_signature(size: int, edges) -> list[tuple[int, int]]:
    ins = [0] * size
    outs = [0] * size
    for i, j in edges:
        outs[i] += 1
        ins[j] += 1
    return list(zip(ins, outs))


def canonical_form(size: int, edges, labels=None) -> tuple:
    """Lexicographically least relabelling; permutations respect degree classes."""
    sig = _degree_signature(size, edges)
    labels = tuple(labels) if labels else (None,) * size
    keyed = [(sig[v], labels[v] or 0) for v in range(size)]
    classes: dict = {}
    for v in range(size):
        classes.setdefault(keyed[v], []).append(v)
    ordered = sorted(classes)
    best = None
    for choice in itertools.product(*(itertools.permutations(classes[c]) for c in ordered)):
        order = [v for block in choice for v in block]
        pos = {v: i for i, v in enumerate(order)}
        form = tuple(sorted((pos[i], pos[j]) for i, j in edges))
        if best is None or form < best:
            best = form
    return (size, tuple(keyed[v] for v in sorted(range(size), key=lambda v: keyed[v])), best)


def _relabel_canonical(size: int, edges) -> AbstractGraph:
    _, _, form = canonical_form(size, edges)
    return AbstractGraph(size, frozenset(form))


def enumerate_graphs(max_v: int = 5, max_in: int = 2, max_out: int = 2) -> list[AbstractGraph]:
    """All weakly connected DAGs on 2..max_v vertices, one per isomorphism class."""
    if not 1 <= max_v <= 6:
        raise ValueError("max_v must be between 1 and 6")
    if not (0 <= max_in <= 2 and 0 <= max_out <= 2):
        raise ValueError("degree bounds must be at most 2")
    seen: set = set()
    result = []
    for size in range(2, max_v + 1):
        pairs = list(itertools.combinations(range(size), 2))  # i < j fixes a topological order
        for r in range(size - 1, len(pairs) + 1):
            for edges in itertools.combinations(pairs, r):
                sig = _degree_signature(size, edges)
                if any(a > max_in or b > max_out for a, b in sig):
                    continue
                if len(weak_components(size, edges)) != 1:
                    continue
                key = canonical_form(size, edges)
                if key in seen:
                    continue
                seen.add(key)
                result.append(AbstractGraph(size, frozenset(key[2])))
    return result


def _odd_prime_divisors(m: int) -> set[int]:
    return {p for p in factorize(m).primes if p != 2} if m > 1 else set()


def labels_realizable(g: AbstractGraph, labels: dict[int, int]) -> bool:
    """Necessary conditions for a labelled shape to be Γ(n) for some square-free n.

    A vertex labelled 2 points at every other vertex and has no in-arrows.
    Labelled pairs must be related exactly as the arrows say.  The in-neighbours
    of a labelled vertex p are distinct primes dividing p - 1; unlabelled ones
    are odd, so p - 1 needs enough odd prime divisors to host them.
    """
    if len(set(labels.values())) != len(labels):
        return False
    for v, p in labels.items():
        if p == 2:
            if g.in_degree(v) or g.out_degree(v) != g.size - 1:
                return False
    for (u, p), (v, q) in itertools.permutations(labels.items(), 2):
        related = (q - 1) % p == 0
        if related != ((u, v) in g.edges):
            return False
    for v, p in labels.items():
        unlabeled_in = [u for u, x in g.edges if x == v and u not in labels]
        room = _odd_prime_divisors(p - 1) - set(labels.values())
        if len(unlabeled_in) > len(room):
            return False
    return True


SHAPE_NAMES = {
    "Q": AbstractGraph(4, frozenset({(0, 1), (1, 2), (3, 2)})),
    "star": AbstractGraph(3, frozenset({(0, 1), (0, 2)})),
    "star+tail": AbstractGraph(4, frozenset({(0, 1), (0, 2), (1, 3)})),
    "triangle": AbstractGraph(3, frozenset({(0, 1), (0, 2), (1, 2)})),
    "K": AbstractGraph(3, frozenset({(0, 2), (1, 2)})),
}


def shape_name(g: AbstractGraph) -> str | None:
    key = canonical_form(g.size, g.edges)
    for name, shape in SHAPE_NAMES.items():
        if canonical_form(shape.size, shape.edges) == key:
            return name
    if len(g.edges) == g.size - 1 and all(
        g.in_degree(v) <= 1 and g.out_degree(v) <= 1 for v in range(g.size)
    ):
        return f"path{g.size}"
    return None


@dataclass(frozen=True)
class CensusEntry:
    graph: AbstractGraph
    labels: dict | None
    g: int
    name: str | None = None

    def label_key(self) -> dict | None:
        if not self.labels:
            return None
        if len(self.labels) == 1:
            return {"p": next(iter(self.labels.values()))}
        return {f"p{v}": p for v, p in sorted(self.labels.items())}

    def labelled_graph(self) -> AbstractGraph:
        g = self.graph
        for v, p in (self.labels or {}).items():
            g = g.with_label(v, p)
        return g

    def to_dict(self) -> dict:
        return {"graph": self.graph.to_dict(), "labels": self.label_key(), "g": self.g, "name": self.name}


@dataclass
class CensusReport:
    params: dict
    entries: list[CensusEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"params": self.params, "entries": [e.to_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def labelings(g: AbstractGraph, primes=LABEL_PRIMES):
    """Realizable assignments of distinct primes to the vertices of out-degree >= 2."""
    need = [v for v in range(g.size) if g.out_degree(v) >= 2]
    if not need:
        yield {}
        return
    for combo in itertools.permutations(primes, len(need)):
        labels = dict(zip(need, combo))
        if labels_realizable(g, labels):
            yield labels


def label_sweep(g: AbstractGraph, primes=LABEL_PRIMES) -> list[tuple[dict, int]]:
    out = []
    for labels in labelings(g, primes):
        lg = g
        for v, p in labels.items():
            lg = lg.with_label(v, p)
        out.append((labels, g_holder(lg)))
    return out


def is_monotone_in_labels(g: AbstractGraph, primes=LABEL_PRIMES) -> bool:
    """g never decreases when one label grows and the others stay put (unconstrained sweep)."""
    need = [v for v in range(g.size) if g.out_degree(v) >= 2]
    for v in need:
        for rest in itertools.product(primes, repeat=len(need) - 1):
            others = [u for u in need if u != v]
            values = []
            for p in primes:
                lg = g.with_label(v, p)
                for u, q in zip(others, rest):
                    lg = lg.with_label(u, q)
                values.append(g_holder(lg))
            if any(a > b for a, b in zip(values, values[1:])):
                return False
    return True


def census(max_v: int = 5, max_in: int = 2, max_out: int = 2, targets=(6, 7)) -> CensusReport:
    params = {"max_vertices": max_v, "max_in": max_in, "max_out": max_out,
              "targets": list(targets), "label_primes": list(LABEL_PRIMES)}
    report = CensusReport(params)
    seen = set()
    for g in enumerate_graphs(max_v, max_in, max_out):
        for labels, value in label_sweep(g):
            if value not in targets:
                continue
            lab = tuple(labels.get(v) for v in range(g.size))
            key = canonical_form(g.size, g.edges, lab)
            if key in seen:
                continue
            seen.add(key)
            report.entries.append(CensusEntry(g, labels or None, value, shape_name(g)))
    report.entries.sort(key=lambda e: (e.g, e.graph.size, len(e.graph.edges), sorted((e.labels or {}).values())))
    return report


def admissible_squarefree(target: int, max_v: int = 5) -> CensusReport:
    """Labelled square-free shapes (in/out-degree <= 2) with g equal to target."""
    return census(max_v, 2, 2, (target,))


def to_pattern(g: AbstractGraph) -> Pattern:
    names = tuple(f"v{i}" for i in range(g.size))
    return Pattern(names, (1,) * g.size, {e: PLAIN for e in g.edges}, g.raw_labels(), odd=False)


def realize(g: AbstractGraph, bound: int) -> int | None:
    """Smallest square-free n <= bound whose Hölder graph is exactly g (labels honoured)."""
    found = realize_pattern(to_pattern(g), bound, start=min(bound, 100))
    return found[0] if found else None
