"""Hölder's formula for square-free orders and the splicing calculus on graphs.

For a square-free n with prime set V,

    g(n) = sum over subsets S of V of  prod_{p not in S} (p^v(p,S) - 1) / (p - 1)

where v(p, S) counts the out-neighbours of p lying in S.  A factor is 0 when
v = 0 and 1 when v = 1 whatever p is, so a label only matters on vertices
with out-degree at least 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .arithmetic import Factorization
from .graph import MAX_SUBSET_VERTICES, GraphSizeError, HolderGraph


class MissingLabelError(ValueError):
    """A prime label was needed on a vertex that has none."""


class _Unlabeled:
    """Placeholder label for vertices whose value never enters the count."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNLABELED"

    def _refuse(self, *args):
        raise MissingLabelError("label of an unlabeled vertex used in arithmetic")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse
    __pow__ = __rpow__ = __floordiv__ = __rfloordiv__ = __int__ = __index__ = _refuse
    __lt__ = __le__ = __gt__ = __ge__ = _refuse


UNLABELED = _Unlabeled()


@dataclass(frozen=True)
class AbstractGraph:
    """Directed acyclic graph on vertices 0..size-1 with optional prime labels."""

    size: int
    edges: frozenset
    labels: tuple = ()

    def __post_init__(self) -> None:
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        labels = tuple(self.labels) or (None,) * self.size
        if len(labels) != self.size:
            raise ValueError("one label slot per vertex is required")
        object.__setattr__(
            self, "labels", tuple(UNLABELED if x is None else x for x in labels)
        )
        for i, j in edges:
            if not (0 <= i < self.size and 0 <= j < self.size) or i == j:
                raise ValueError(f"bad edge {(i, j)}")
        if not self._acyclic():
            raise ValueError("graph has a directed cycle")

    def _acyclic(self) -> bool:
        indeg = [0] * self.size
        for _, j in self.edges:
            indeg[j] += 1
        out = self.out_lists()
        stack = [v for v in range(self.size) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for u in out[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    stack.append(u)
        return seen == self.size

    def out_lists(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.size)]
        for i, j in sorted(self.edges):
            out[i].append(j)
        return out

    def out_masks(self) -> list[int]:
        masks = [0] * self.size
        for i, j in self.edges:
            masks[i] |= 1 << j
        return masks

    def in_degree(self, v: int) -> int:
        return sum(1 for _, j in self.edges if j == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for i, _ in self.edges if i == v)

    def label(self, v: int):
        return self.labels[v]

    def is_labeled(self, v: int) -> bool:
        return self.labels[v] is not UNLABELED

    def is_regular(self) -> bool:
        return all(self.out_degree(v) <= 1 for v in range(self.size))

    def raw_labels(self) -> tuple:
        return tuple(None if x is UNLABELED else x for x in self.labels)

    def remove(self, v: int) -> AbstractGraph:
        keep = [u for u in range(self.size) if u != v]
        remap = {old: new for new, old in enumerate(keep)}
        edges = {(remap[i], remap[j]) for i, j in self.edges if v not in (i, j)}
        return AbstractGraph(len(keep), frozenset(edges), tuple(self.raw_labels()[u] for u in keep))

    def with_label(self, v: int, p: int) -> AbstractGraph:
        labels = list(self.raw_labels())
        labels[v] = p
        return AbstractGraph(self.size, self.edges, tuple(labels))

    def union(self, other: AbstractGraph) -> AbstractGraph:
        """Disjoint union; vertices of ``other`` are shifted by self.size."""
        k = self.size
        edges = set(self.edges) | {(i + k, j + k) for i, j in other.edges}
        return AbstractGraph(k + other.size, frozenset(edges), self.raw_labels() + other.raw_labels())

    def add_edge(self, i: int, j: int) -> AbstractGraph:
        return AbstractGraph(self.size, self.edges | {(i, j)}, self.raw_labels())

    @classmethod
    def path(cls, k: int) -> AbstractGraph:
        return cls(k, frozenset((i, i + 1) for i in range(k - 1)))

    @classmethod
    def single(cls, label: int | None = None) -> AbstractGraph:
        return cls(1, frozenset(), (label,))

    @classmethod
    def from_edges(cls, size: int, edges: Iterable[tuple[int, int]], labels: Sequence | None = None) -> AbstractGraph:
        return cls(size, frozenset(edges), tuple(labels) if labels else ())

    @classmethod
    def from_holder(cls, g: HolderGraph) -> AbstractGraph:
        if not g.is_squarefree():
            raise ValueError("Hölder's formula needs a square-free graph")
        return cls(len(g), frozenset(g.edges), g.primes)

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "label": lab} for v, lab in enumerate(self.raw_labels())],
            "edges": sorted([list(e) for e in self.edges]),
        }


def _as_abstract(g) -> AbstractGraph:
    if isinstance(g, HolderGraph):
        return AbstractGraph.from_holder(g)
    if isinstance(g, AbstractGraph):
        return g
    raise TypeError(f"expected a graph, got {type(g).__name__}")


def summand_factor(label, v: int) -> int:
    """(p^v - 1)/(p - 1), evaluated without touching p when v <= 1."""
    if v <= 1:
        return v
    if label is UNLABELED or label is None:
        raise MissingLabelError("vertex with out-degree >= 2 needs a prime label")
    return (label**v - 1) // (label - 1)


def _check(g: AbstractGraph) -> None:
    if g.size > MAX_SUBSET_VERTICES:
        raise GraphSizeError(f"{g.size} vertices exceeds the limit of {MAX_SUBSET_VERTICES}")
    for v in range(g.size):
        if not g.is_labeled(v) and g.out_degree(v) >= 2:
            raise MissingLabelError(f"vertex {v} has out-degree >= 2 but no label")


def summand(g: AbstractGraph, mask: int, out: list[int] | None = None) -> int:
    """Hölder summand of the subset encoded by ``mask``."""
    out = out if out is not None else g.out_masks()
    value = 1
    for p in range(g.size):
        if mask >> p & 1:
            continue
        v = bin(out[p] & mask).count("1")
        if v == 0:
            return 0
        value *= summand_factor(g.labels[p], v)
    return value


def multiplicities(g: AbstractGraph, subset: Iterable[int]) -> dict[int, int]:
    """v(p, S) for every p outside S."""
    mask = sum(1 << v for v in subset)
    out = g.out_masks()
    return {p: bin(out[p] & mask).count("1") for p in range(g.size) if not mask >> p & 1}


def _reverse_topological(g: AbstractGraph) -> list[int]:
    out = g.out_lists()
    order: list[int] = []
    state = [0] * g.size
    for start in range(g.size):
        stack = [(start, iter(out[start]))]
        if state[start]:
            continue
        state[start] = 1
        while stack:
            v, it = stack[-1]
            for u in it:
                if not state[u]:
                    state[u] = 1
                    stack.append((u, iter(out[u])))
                    break
            else:
                stack.pop()
                order.append(v)
    return order


def _subset_sum(g: AbstractGraph, required: int = 0) -> int:
    """Sum of summands over subsets containing ``required``.

    Vertices are decided sinks first, so when p is left out all of its
    out-neighbours are already placed and its factor is known; zero factors
    prune the branch.  The work is proportional to the number of central
    subsets rather than 2^size.
    """
    _check(g)
    out = g.out_masks()
    order = _reverse_topological(g)
    labels = g.labels
    size = g.size
    total = 0
    stack = [(0, 0, 1)]
    while stack:
        idx, mask, acc = stack.pop()
        if idx == size:
            total += acc
            continue
        p = order[idx]
        stack.append((idx + 1, mask | 1 << p, acc))
        if required >> p & 1:
            continue
        v = (out[p] & mask).bit_count()
        if v:
            stack.append((idx + 1, mask, acc * summand_factor(labels[p], v)))
    return total


def g_holder(g) -> int:
    """Number of groups of a square-free order (or abstract graph) by direct subset sum."""
    return _subset_sum(_as_abstract(g))


def g_rooted(g, v: int) -> int:
    """Hölder sum restricted to subsets that contain vertex v."""
    g = _as_abstract(g)
    if not 0 <= v < g.size:
        raise IndexError(v)
    return _subset_sum(g, 1 << v)


def splice(gamma: AbstractGraph, q_tilde: int, lam: AbstractGraph, p_tilde: int) -> AbstractGraph:
    """Union of gamma and lam plus one arrow q_tilde -> p_tilde.

    q_tilde must have out-degree 0 in gamma.  Vertices of lam are shifted by
    gamma.size in the result.  The count satisfies
    g(result) = g(gamma) g(lam) + g(gamma - q_tilde) g(lam; p_tilde).
    """
    if not 0 <= q_tilde < gamma.size or not 0 <= p_tilde < lam.size:
        raise IndexError("splice vertex out of range")
    if gamma.out_degree(q_tilde) != 0:
        raise ValueError("q_tilde must have out-degree 0 in gamma")
    return gamma.union(lam).add_edge(q_tilde, gamma.size + p_tilde)


def extend_forward(g: AbstractGraph, q: int) -> AbstractGraph:
    """Add a new vertex v (index g.size) and the arrow q -> v; q needs out-degree 0.

    g(result) = g(g) + g(g - q).
    """
    return splice(g, q, AbstractGraph.single(), 0)


def extend_backward(g: AbstractGraph, p: int) -> AbstractGraph:
    """Add a new vertex v (index g.size) and the arrow v -> p; p needs in-degree 0.

    g(result) = g(g) + g(g; p).
    """
    if not 0 <= p < g.size:
        raise IndexError(p)
    if g.in_degree(p) != 0:
        raise ValueError("p must have in-degree 0")
    return g.union(AbstractGraph.single()).add_edge(g.size, p)


def path_count(k: int) -> int:
    """g of a directed path on k vertices, the Fibonacci number F(k+1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a, b = 1, 1  # F(1), F(2)
    for _ in range(k):
        a, b = b, a + b
    return a


def lower_bound_degree(p: int, r: int, s: int) -> int:
    """2^r + (p^s - 1)/(p - 1) for a vertex of label p, in-degree r, out-degree s."""
    if p < 2 or r < 0 or s < 0:
        raise ValueError("need p >= 2 and r, s >= 0")
    return 2**r + (p**s - 1) // (p - 1)


PRIME_POWER_COUNTS = {0: 1, 1: 1, 2: 2, 3: 5}


def lower_bound_connected(f: Factorization) -> int:
    """prod g(p^a) + s - 1 for a connected order with s prime factors."""
    exps = f.exponents
    if any(a >= 4 for a in exps):
        raise ValueError("no exact count for prime powers with exponent >= 4")
    return math.prod(PRIME_POWER_COUNTS[a] for a in exps) + max(len(exps) - 1, 0)
