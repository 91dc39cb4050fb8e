"""Annotated graph patterns: exact matching against Γ(n) and witness search.

A pattern fixes the vertex exponents, optionally the prime on some vertices,
and the full edge profile between every ordered pair of vertices (absent
pairs must carry no edge at all).  Matching is therefore exact: a candidate
n matches only if its generalized Hölder graph has no extra arrow and no
arrow is stronger or weaker than required.
"""
from __future__ import annotations

import bisect
import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .arithmetic import factorize, is_prime, primes_up_to
from .graph import HolderGraph, Profile, build_graph, edge_profile

# common profiles
PLAIN = frozenset({(1, 1)})                   # p -> q between primes
SQ_TO_P_WEAK = frozenset({(1, 1)})            # p^2 --> q,  p || q - 1
SQ_TO_P_STRONG = frozenset({(1, 1), (2, 1)})  # p^2 -> q,   p^2 | q - 1
P_TO_SQ_WEAK = frozenset({(1, 2)})            # q --> p^2,  q | p + 1, q !| p - 1
P_TO_SQ_STRONG = frozenset({(1, 1), (1, 2)})  # q -> p^2,   q | p - 1


@dataclass(frozen=True)
class Pattern:
    names: tuple[str, ...]
    exponents: tuple[int, ...]
    edges: Mapping[tuple[int, int], Profile] = field(default_factory=dict)
    fixed: tuple = ()
    odd: bool = True

    def __post_init__(self) -> None:
        if not self.fixed:
            object.__setattr__(self, "fixed", (None,) * len(self.names))
        if not (len(self.names) == len(self.exponents) == len(self.fixed)):
            raise ValueError("names, exponents and fixed labels must align")

    def __len__(self) -> int:
        return len(self.names)

    def required(self, i: int, j: int) -> Profile:
        return self.edges.get((i, j), frozenset())

    def neighbours(self, v: int) -> set[int]:
        return {j for i, j in self.edges if i == v} | {i for i, j in self.edges if j == v}

    def __hash__(self) -> int:
        return hash((self.names, self.exponents, frozenset(self.edges.items()), self.fixed, self.odd))


def pattern(spec: str, edges: Mapping[tuple[str, str], Profile] = None, odd: bool = True) -> Pattern:
    """Build a pattern from a compact vertex list such as ``"p^2 q r"`` or ``"3 p^2"``.

    Numeric vertex names are fixed labels.
    """
    names, exps, fixed = [], [], []
    for token in spec.split():
        base, _, exp = token.partition("^")
        names.append(base)
        exps.append(int(exp) if exp else 1)
        fixed.append(int(base) if base.isdigit() else None)
    index = {name: i for i, name in enumerate(names)}
    prof = {(index[a], index[b]): frozenset(p) for (a, b), p in (edges or {}).items()}
    return Pattern(tuple(names), tuple(exps), prof, tuple(fixed), odd)


def _label_ok(pat: Pattern, v: int, prime: int) -> bool:
    if pat.fixed[v] is not None:
        return pat.fixed[v] == prime
    return not (pat.odd and prime == 2)


def match(pat: Pattern, g: HolderGraph) -> dict[str, int] | None:
    """Label assignment mapping pattern names onto the primes of g, or None."""
    if len(pat) != len(g):
        return None
    if sorted(pat.exponents) != sorted(g.exponents):
        return None
    k = len(pat)
    for perm in itertools.permutations(range(k)):
        if any(pat.exponents[v] != g.vertices[perm[v]][1] for v in range(k)):
            continue
        if not all(_label_ok(pat, v, g.vertices[perm[v]][0]) for v in range(k)):
            continue
        if all(
            g.profile(perm[u], perm[v]) == pat.required(u, v)
            for u in range(k)
            for v in range(k)
            if u != v
        ):
            return {pat.names[v]: g.vertices[perm[v]][0] for v in range(k)}
    return None


def disjoint_union(a: Pattern, b: Pattern, odd: bool = True) -> Pattern:
    """Both patterns side by side with no arrows between them; names get suffixes 1 and 2."""
    k = len(a)
    names = tuple(f"{x}1" for x in a.names) + tuple(f"{x}2" for x in b.names)
    edges = dict(a.edges)
    edges.update({(i + k, j + k): prof for (i, j), prof in b.edges.items()})
    return Pattern(names, a.exponents + b.exponents, edges, a.fixed + b.fixed, odd)


def pattern_from_graph(g: HolderGraph, odd: bool = False) -> Pattern:
    """Pattern requiring exactly the shape of g (labels left free)."""
    names = tuple(f"v{i}" for i in range(len(g)))
    return Pattern(names, g.exponents, dict(g.edges), (None,) * len(g), odd)


# --- witness search -------------------------------------------------------

_SIEVE_CACHE: dict[int, list[int]] = {}


def _primes_below(limit: int) -> list[int]:
    for cached in sorted(_SIEVE_CACHE):
        if cached >= limit:
            primes = _SIEVE_CACHE[cached]
            return primes[: bisect.bisect_right(primes, limit)]
    _SIEVE_CACHE[limit] = primes_up_to(limit)
    return _SIEVE_CACHE[limit]


def _search_order(pat: Pattern) -> list[int]:
    """Fixed labels first, then highest exponent; grow along edges."""
    k = len(pat)
    remaining = set(range(k))
    order: list[int] = []
    while remaining:
        frontier = [v for v in remaining if pat.neighbours(v) & set(order)]
        pool = frontier or list(remaining)
        v = min(pool, key=lambda x: (pat.fixed[x] is None, -pat.exponents[x], x))
        order.append(v)
        remaining.discard(v)
    return order


def _prime_divisors_of_orders(q: int, b: int) -> list[int]:
    """Primes dividing q^j - 1 for some 1 <= j <= b."""
    found: set[int] = set()
    for j in range(1, b + 1):
        found.update(factorize(q**j - 1).primes)
    return sorted(found)


def _residues(u: int, exp_v: int) -> list[int]:
    """Residues r mod u with r^j = 1 (mod u) for some j <= exp_v."""
    return [r for r in range(1, u) if any(pow(r, j, u) == 1 for j in range(1, exp_v + 1))]


def _merged_progressions(residues: list[int], modulus: int, limit: int) -> Iterator[int]:
    streams = [range(r if r > 1 else r + modulus, limit + 1, modulus) for r in residues]
    yield from heapq.merge(*streams)


def _candidates(pat: Pattern, v: int, assigned: dict[int, int], limit: int) -> Iterator[int]:
    if pat.fixed[v] is not None:
        if pat.fixed[v] <= limit:
            yield pat.fixed[v]
        return
    # v -> u with u assigned: v divides u^j - 1, a finite list
    for u in assigned:
        if pat.required(v, u):
            for c in _prime_divisors_of_orders(assigned[u], pat.exponents[u]):
                if c <= limit:
                    yield c
            return
    # u -> v with u assigned: v lies in a few residue classes mod u
    for u in assigned:
        if pat.required(u, v):
            for c in _merged_progressions(_residues(assigned[u], pat.exponents[v]), assigned[u], limit):
                if is_prime(c):
                    yield c
            return
    yield from _primes_below(limit)


def _consistent(pat: Pattern, v: int, c: int, assigned: dict[int, int]) -> bool:
    if c in assigned.values() or not _label_ok(pat, v, c):
        return False
    a = pat.exponents[v]
    for u, q in assigned.items():
        b = pat.exponents[u]
        if edge_profile(c, a, q, b) != pat.required(v, u):
            return False
        if edge_profile(q, b, c, a) != pat.required(u, v):
            return False
    return True


def _iroot(x: int, k: int) -> int:
    r = int(round(x ** (1.0 / k)))
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def realize_within(pat: Pattern, bound: int) -> tuple[int, dict[str, int]] | None:
    """Smallest n <= bound whose graph matches ``pat`` exactly, with its labels."""
    order = _search_order(pat)
    k = len(order)
    floor_prime = 3 if pat.odd else 2
    best: list = [bound + 1, None]

    def rest_min(idx: int) -> int:
        return math.prod(
            (pat.fixed[v] if pat.fixed[v] is not None else floor_prime) ** pat.exponents[v]
            for v in order[idx:]
        )

    def dfs(idx: int, assigned: dict[int, int], product: int) -> None:
        if idx == k:
            if product < best[0]:
                best[0] = product
                best[1] = dict(assigned)
            return
        v = order[idx]
        room = (best[0] - 1) // (product * rest_min(idx + 1))
        limit = _iroot(room, pat.exponents[v]) if room > 0 else 0
        if limit < 2:
            return
        for c in _candidates(pat, v, assigned, limit):
            if product * c ** pat.exponents[v] * rest_min(idx + 1) >= best[0]:
                break  # candidates arrive in increasing order
            if _consistent(pat, v, c, assigned):
                assigned[v] = c
                dfs(idx + 1, assigned, product * c ** pat.exponents[v])
                del assigned[v]

    dfs(0, {}, 1)
    if best[1] is None:
        return None
    n = best[0]
    labels = {pat.names[v]: p for v, p in sorted(best[1].items())}
    if match(pat, build_graph(n)) is None:
        raise AssertionError(f"witness {n} does not match its pattern")
    return n, labels


def realize(pat: Pattern, bound: int, start: int = 1000) -> tuple[int, dict[str, int]] | None:
    """Iterative deepening over bounds start, 10*start, ... up to ``bound``."""
    b = min(start, bound)
    while True:
        found = realize_within(pat, b)
        if found is not None or b >= bound:
            return found
        b = min(b * 10, bound)
