"""Generalized Hölder graphs of integers.

The vertices of the graph of n are the maximal prime powers p^a dividing n.
There is an arrow p^a -> q^b when q^j = 1 (mod p^i) for some 1 <= i <= a and
1 <= j <= b; the set of all such (i, j) is kept as the edge's profile, so the
weak/strong distinction for cube-free n can be read off directly.

Naming of vertex classes follows the source literature, which is the reverse
of the usual convention: a vertex is *initial* when its out-degree is 0 and
*terminal* when its in-degree is 0.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .arithmetic import Factorization, factorize

MAX_SUBSET_VERTICES = 24

Profile = frozenset  # frozenset[tuple[int, int]]


class GraphSizeError(ValueError):
    """Raised when a subset enumeration would exceed 2**24 subsets."""


def edge_profile(p: int, a: int, q: int, b: int) -> Profile:
    """All (i, j) with q^j = 1 mod p^i, 1 <= i <= a, 1 <= j <= b."""
    if p == q:
        return frozenset()
    pairs = set()
    for j in range(1, b + 1):
        t = q**j - 1
        for i in range(1, a + 1):
            if t % p**i:
                break
            pairs.add((i, j))
    return frozenset(pairs)


def vertex_name(p: int, a: int) -> str:
    return f"{p}^{a}"


@dataclass(frozen=True, eq=False)
class HolderGraph:
    vertices: tuple[tuple[int, int], ...]
    edges: Mapping[tuple[int, int], Profile] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return math.prod(p**a for p, a in self.vertices)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.vertices)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, p: int) -> int:
        for i, (q, _) in enumerate(self.vertices):
            if q == p:
                return i
        raise KeyError(f"no vertex with prime {p}")

    def is_squarefree(self) -> bool:
        return all(a == 1 for _, a in self.vertices)

    def is_cubefree(self) -> bool:
        return all(a <= 2 for _, a in self.vertices)

    def profile(self, i: int, j: int) -> Profile:
        return self.edges.get((i, j), frozenset())

    def out_masks(self) -> list[int]:
        masks = [0] * len(self.vertices)
        for i, j in self.edges:
            masks[i] |= 1 << j
        return masks

    def subgraph(self, indices: Iterable[int]) -> HolderGraph:
        keep = sorted(indices)
        remap = {old: new for new, old in enumerate(keep)}
        edges = {
            (remap[i], remap[j]): prof
            for (i, j), prof in self.edges.items()
            if i in remap and j in remap
        }
        return HolderGraph(tuple(self.vertices[i] for i in keep), edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HolderGraph):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.edges) == dict(other.edges)

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self.edges.items())))


def build_graph(f: Factorization | int) -> HolderGraph:
    if isinstance(f, int):
        f = factorize(f)
    vertices = tuple(f.entries)
    edges = {}
    for i, (p, a) in enumerate(vertices):
        for j, (q, b) in enumerate(vertices):
            if i != j:
                prof = edge_profile(p, a, q, b)
                if prof:
                    edges[(i, j)] = prof
    return HolderGraph(vertices, edges)


def edge_strength(g: HolderGraph, edge: tuple[int, int]) -> str:
    """'weak' or 'strong' for an arrow between a square and a prime.

    p^2 -> q is weak when p exactly divides q - 1; q -> p^2 is weak when
    q divides p + 1 but not p - 1.
    """
    i, j = edge
    if (i, j) not in g.edges:
        raise ValueError(f"no edge {edge}")
    a, b = g.vertices[i][1], g.vertices[j][1]
    prof = g.edges[(i, j)]
    if (a, b) == (2, 1):
        return "strong" if (2, 1) in prof else "weak"
    if (a, b) == (1, 2):
        return "strong" if (1, 1) in prof else "weak"
    raise ValueError("edge strength is only defined between p^2 and q")


def _strength_or_na(g: HolderGraph, edge: tuple[int, int]) -> str:
    a, b = g.vertices[edge[0]][1], g.vertices[edge[1]][1]
    if {a, b} == {1, 2}:
        return edge_strength(g, edge)
    return "n/a"


def degrees(g: HolderGraph, v: int) -> tuple[int, int]:
    """(in-degree, out-degree) of vertex index v."""
    if not 0 <= v < len(g.vertices):
        raise IndexError(v)
    ins = sum(1 for _, j in g.edges if j == v)
    outs = sum(1 for i, _ in g.edges if i == v)
    return ins, outs


def initial_vertices(g: HolderGraph) -> list[int]:
    """Vertices of out-degree 0."""
    return [v for v in range(len(g.vertices)) if degrees(g, v)[1] == 0]


def terminal_vertices(g: HolderGraph) -> list[int]:
    """Vertices of in-degree 0."""
    return [v for v in range(len(g.vertices)) if degrees(g, v)[0] == 0]


def weak_components(size: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for v in range(size):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


@dataclass(frozen=True)
class Decomposition:
    """Splitting of n into connected parts, isolated prime powers and a cyclic part.

    ``components`` are the weakly connected pieces with at least two vertices,
    ``prime_powers`` the isolated vertices p^a with a >= 2, and ``cyclic_part``
    the product of the isolated primes.
    """

    components: tuple[HolderGraph, ...]
    prime_powers: tuple[tuple[int, int], ...]
    cyclic_part: int

    @property
    def parts(self) -> tuple[HolderGraph, ...]:
        """Every non-cyclic factor, isolated prime powers as one-vertex graphs."""
        return self.components + tuple(HolderGraph(((p, a),)) for p, a in self.prime_powers)

    def reassemble(self) -> int:
        return math.prod(c.n for c in self.components) * math.prod(
            p**a for p, a in self.prime_powers
        ) * self.cyclic_part


def decompose(g: HolderGraph) -> Decomposition:
    components = []
    powers = []
    m = 1
    for group in weak_components(len(g.vertices), g.edges):
        if len(group) > 1:
            components.append(g.subgraph(group))
            continue
        p, a = g.vertices[group[0]]
        if a == 1:
            m *= p
        else:
            powers.append((p, a))
    return Decomposition(tuple(components), tuple(powers), m)


def central_masks(out: list[int]) -> list[int]:
    """Bitmasks of subsets that every outside vertex points into."""
    size = len(out)
    if size > MAX_SUBSET_VERTICES:
        raise GraphSizeError(f"{size} vertices exceeds the limit of {MAX_SUBSET_VERTICES}")
    full = (1 << size) - 1
    result = []
    for mask in range(full + 1):
        rest = full & ~mask
        ok = True
        while rest:
            low = rest & -rest
            if not out[low.bit_length() - 1] & mask:
                ok = False
                break
            rest ^= low
        if ok:
            result.append(mask)
    return result


def central_subsets(g: HolderGraph) -> list[frozenset[int]]:
    """Central subsets of a square-free graph, as sets of primes."""
    if not g.is_squarefree():
        raise ValueError("central subsets are defined for square-free graphs")
    primes = g.primes
    return [
        frozenset(primes[i] for i in range(len(primes)) if mask >> i & 1)
        for mask in central_masks(g.out_masks())
    ]


def to_dot(g: HolderGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for p, a in g.vertices:
        lines.append(f'  "{vertex_name(p, a)}";')
    for i, j in g.edge_list():
        src = vertex_name(*g.vertices[i])
        dst = vertex_name(*g.vertices[j])
        style = "dashed" if _strength_or_na(g, (i, j)) == "weak" else "solid"
        lines.append(f'  "{src}" -> "{dst}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dict(g: HolderGraph) -> dict:
    return {
        "n": g.n,
        "vertices": [{"p": p, "a": a} for p, a in g.vertices],
        "edges": [
            {
                "from": vertex_name(*g.vertices[i]),
                "to": vertex_name(*g.vertices[j]),
                "strength": _strength_or_na(g, (i, j)),
                "pairs": sorted([list(x) for x in g.edges[(i, j)]]),
            }
            for i, j in g.edge_list()
        ],
    }


def to_json(g: HolderGraph) -> str:
    return json.dumps(to_dict(g), sort_keys=True)


def from_dict(data: dict) -> HolderGraph:
    vertices = tuple((int(v["p"]), int(v["a"])) for v in data["vertices"])
    names = {vertex_name(p, a): i for i, (p, a) in enumerate(vertices)}
    edges = {
        (names[e["from"]], names[e["to"]]): frozenset(tuple(x) for x in e["pairs"])
        for e in data["edges"]
    }
    g = HolderGraph(vertices, edges)
    if "n" in data and data["n"] != g.n:
        raise ValueError("n does not match the vertex list")
    return g


def from_json(text: str) -> HolderGraph:
    return from_dict(json.loads(text))
