"""Decide g(n) = k for k in {1, 2, 3, 6, 7} by matching Γ(n) against rule patterns.

Every rule is an exact annotated-graph pattern, so "no further congruences"
is built in: any extra arrow, or a strong arrow where a weak one is required,
makes the match fail.  The cyclic part of n is stripped first; the remaining
parts are classified one by one and combined multiplicatively.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .arithmetic import factorize
from .graph import build_graph, decompose
from .patterns import (
    P_TO_SQ_STRONG,
    P_TO_SQ_WEAK,
    PLAIN,
    SQ_TO_P_STRONG,
    SQ_TO_P_WEAK,
    Pattern,
    disjoint_union,
    match,
    pattern,
)

CLASSIFIED = (1, 2, 3, 6, 7)


class NotClassifiedError(ValueError):
    """k = 4 and k = 5 were settled by G. A. Miller and are not encoded here."""


@dataclass(frozen=True)
class Variant:
    suffix: str
    pattern: Pattern


@dataclass(frozen=True)
class ClassificationRule:
    id: str
    target_k: int
    clause: str
    variants: tuple[Variant, ...] = ()
    congruences: tuple[str, ...] = ()
    exclusion: bool = True
    # product rules combine independently classified parts instead
    parts: tuple[int, ...] = ()

    @property
    def connected(self) -> bool:
        return not self.parts

    def variant_id(self, v: Variant) -> str:
        return f"{self.id}.{v.suffix}" if v.suffix else self.id

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "k": self.target_k,
            "clause": self.clause,
            "congruences": list(self.congruences),
            "exclusion": self.exclusion,
            "variants": [self.variant_id(v) for v in self.variants],
        }


def _rule(id, k, clause, congruences, *variants, parts=()):
    vs = tuple(Variant(s, p) for s, p in variants)
    return ClassificationRule(id, k, clause, vs, tuple(congruences), True, parts)


PHI2 = pattern("p q", {("p", "q"): PLAIN}, odd=False)
SQUARE = pattern("p^2", odd=False)
P2Q_WEAK = pattern("p^2 q", {("q", "p"): P_TO_SQ_WEAK})
PATH3 = pattern("p q r", {("p", "q"): PLAIN, ("q", "r"): PLAIN})

# square-free shapes
Q_GRAPH = pattern("p q r s", {("p", "q"): PLAIN, ("q", "r"): PLAIN, ("s", "r"): PLAIN})
TRIANGLE_2 = pattern("2 p q", {("2", "p"): PLAIN, ("2", "q"): PLAIN, ("p", "q"): PLAIN})
STAR_5 = pattern("5 p q", {("5", "p"): PLAIN, ("5", "q"): PLAIN})
TRIANGLE_3 = pattern("3 q r", {("3", "q"): PLAIN, ("3", "r"): PLAIN, ("q", "r"): PLAIN})
STAR_TAIL_3 = pattern(
    "3 p q r", {("3", "p"): PLAIN, ("3", "q"): PLAIN, ("q", "r"): PLAIN}
)

_RULES = (
    _rule("C1", 1, "n is cyclic: gcd(n, phi(n)) = 1", ["gcd(n, phi(n)) = 1"]),
    _rule(
        "P2", 2, "n = p^2, or n = pq with q = 1 (mod p)",
        ["q = 1 (mod p)"], ("I", SQUARE), ("II", PHI2),
    ),
    _rule(
        "P3", 3,
        "n odd and n = p^2 q with q | p + 1, or n = pqr with q = 1 (mod p), r = 1 (mod q), r != 1 (mod p)",
        ["q | p + 1", "q = 1 (mod p)", "r = 1 (mod q)"], ("I", P2Q_WEAK), ("II", PATH3),
    ),
    _rule("T6.I", 6, "n = pqrs, r = 1 (mod qs), q = 1 (mod p)",
          ["r = 1 (mod qs)", "q = 1 (mod p)"], ("", Q_GRAPH)),
    _rule("T6.II", 6, "n = 2pq, q = 1 (mod p)", ["q = 1 (mod p)"], ("", TRIANGLE_2)),
    _rule("T6.III", 6, "n = 3p^2, p = 1 (mod 3)", ["p = 1 (mod 3)"],
          ("", pattern("3 p^2", {("3", "p"): P_TO_SQ_STRONG}))),
    _rule("T6.IV", 6, "n = p^3 q, p^3 = 1 (mod q)", ["p^3 = 1 (mod q)"],
          ("", pattern("p^3 q", {("q", "p"): frozenset({(1, 3)})}))),
    _rule(
        "T6.V", 6,
        "n = p^2 q r with (a) p || q - 1, r = 1 (mod q); (b) q = 3, p = -1 (mod 3); "
        "(c) p^2 | r - 1, p = -1 (mod q)",
        ["p || q - 1", "r = 1 (mod q)", "q = 3", "p = -1 (mod 3)", "p^2 | r - 1", "p = -1 (mod q)"],
        ("a", pattern("p^2 q r", {("p", "q"): SQ_TO_P_WEAK, ("q", "r"): PLAIN})),
        # q = 3 alone would also admit 3 -> r; the g = 6 shape needs that arrow
        ("b", pattern("p^2 3 r", {("3", "p"): P_TO_SQ_WEAK, ("3", "r"): PLAIN})),
        ("c", pattern("p^2 q r", {("p", "r"): SQ_TO_P_STRONG, ("q", "p"): P_TO_SQ_WEAK})),
    ),
    _rule("T6.VI", 6, "n = p^2 q^2, p || q + 1", ["p || q + 1"],
          ("", pattern("p^2 q^2", {("p", "q"): frozenset({(1, 2)})}))),
    _rule(
        "T6.VII", 6,
        "n = n1 n2 arithmetically independent, g(n1) = 2 and g(n2) = 3",
        ["n1 = qr with r = 1 (mod q), or n1 = q^2",
         "n2 = pqr path, or n2 = p^2 q with q | p + 1"],
        # only used to realize witnesses; classification combines the parts
        ("a.a", disjoint_union(PHI2, PATH3)),
        ("a.b", disjoint_union(PHI2, P2Q_WEAK)),
        ("b.a", disjoint_union(SQUARE, PATH3)),
        ("b.b", disjoint_union(SQUARE, P2Q_WEAK)),
        parts=(2, 3),
    ),
    _rule("T7.I", 7, "n = 5pq, p = q = 1 (mod 5)", ["p = 1 (mod 5)", "q = 1 (mod 5)"], ("", STAR_5)),
    _rule("T7.II", 7, "n = 3qr, q = r = 1 (mod 3), r = 1 (mod q)",
          ["q = 1 (mod 3)", "r = 1 (mod 3)", "r = 1 (mod q)"], ("", TRIANGLE_3)),
    _rule("T7.III", 7, "n = 3pqr, p = q = 1 (mod 3), r = 1 (mod q)",
          ["p = 1 (mod 3)", "q = 1 (mod 3)", "r = 1 (mod q)"], ("", STAR_TAIL_3)),
    _rule("T7.IV", 7, "n = 5p^2, p = 1 (mod 5)", ["p = 1 (mod 5)"],
          ("", pattern("5 p^2", {("5", "p"): P_TO_SQ_STRONG}))),
    _rule("T7.V", 7, "n = p^3 q, p = -1 (mod q)", ["p = -1 (mod q)"],
          ("", pattern("p^3 q", {("q", "p"): frozenset({(1, 2)})}))),
    _rule("T7.VI", 7, "n = 5p^2 q, q = 1 (mod 5), p = -1 (mod 5)",
          ["q = 1 (mod 5)", "p = -1 (mod 5)"],
          ("", pattern("p^2 5 q", {("5", "p"): P_TO_SQ_WEAK, ("5", "q"): PLAIN}))),
    _rule("T7.VII", 7, "n = p^2 q r, p^2 | q - 1, r = 1 (mod q)",
          ["p^2 | q - 1", "r = 1 (mod q)"],
          ("", pattern("p^2 q r", {("p", "q"): SQ_TO_P_STRONG, ("q", "r"): PLAIN}))),
    _rule("T7.VIII", 7, "n = p^2 q^2, p^2 | q + 1", ["p^2 | q + 1"],
          ("", pattern("p^2 q^2", {("p", "q"): frozenset({(1, 2), (2, 2)})}))),
    _rule("T7.IX", 7, "n = p^2 q r s, p = -1 (mod qr), p || s - 1",
          ["p = -1 (mod qr)", "p || s - 1"],
          ("", pattern("p^2 q r s", {("q", "p"): P_TO_SQ_WEAK, ("r", "p"): P_TO_SQ_WEAK,
                                     ("p", "s"): SQ_TO_P_WEAK}))),
)


def rules() -> list[ClassificationRule]:
    return list(_RULES)


def rule(rule_id: str) -> ClassificationRule:
    for r in _RULES:
        if r.id == rule_id:
            return r
    raise KeyError(rule_id)


_LOCAL = [r for r in _RULES if r.connected and r.id != "C1"]


@dataclass(frozen=True)
class Verdict:
    k: int | None
    matched_rule: str | None = None
    witness: dict = field(default_factory=dict)

    @property
    def known(self) -> bool:
        return self.k is not None

    def to_dict(self) -> dict:
        return {"k": self.k, "rule": self.matched_rule, "witness": self.witness}


def local_matches(part) -> list[tuple[ClassificationRule, str, dict]]:
    """Every (rule, variant id, labels) whose pattern matches this part exactly."""
    found = []
    for r in _LOCAL:
        for v in r.variants:
            labels = match(v.pattern, part)
            if labels is not None:
                found.append((r, r.variant_id(v), labels))
    return found


def matching_rules(n: int) -> list[str]:
    """Ids of all rule variants that n satisfies (normally at most one)."""
    v = classify(n)
    if v.k is None:
        return []
    if v.matched_rule in ("C1", "T6.VII"):
        return [v.matched_rule]
    d = decompose(build_graph(n))
    return [vid for part in d.parts for _, vid, _ in local_matches(part)]


def classify(n: int) -> Verdict:
    if n < 1:
        raise ValueError("classify requires n >= 1")
    f = factorize(n)
    if any(a >= 4 for a in f.exponents):
        return Verdict(None)
    d = decompose(build_graph(f))
    parts = d.parts
    if not parts:
        return Verdict(1, "C1", {"m": d.cyclic_part})
    verdicts = []
    for part in parts:
        found = local_matches(part)
        if not found:
            return Verdict(None)
        ks = {r.target_k for r, _, _ in found}
        if len(ks) > 1:
            raise AssertionError(f"part {part.n} of {n} matches rules for several k: {ks}")
        verdicts.append((found[0], part.n))
    if len(verdicts) == 1:
        (r, vid, labels), _ = verdicts[0]
        witness = dict(labels)
        if d.cyclic_part > 1:
            witness["m"] = d.cyclic_part
        return Verdict(r.target_k, vid, witness)
    if len(verdicts) == 2:
        by_k = {v[0][0].target_k: v for v in verdicts}
        if set(by_k) == {2, 3}:
            witness = {
                "n1": by_k[2][1],
                "n2": by_k[3][1],
                "rules": [by_k[2][0][1], by_k[3][0][1]],
            }
            if d.cyclic_part > 1:
                witness["m"] = d.cyclic_part
            return Verdict(6, "T6.VII", witness)
    return Verdict(None)


def _classify_range(args: tuple[int, int, int]) -> list[int]:
    k, lo, hi = args
    return [n for n in range(lo, hi + 1) if classify(n).k == k]


def shards(lo: int, hi: int, jobs: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into at most ``jobs`` contiguous ranges."""
    jobs = max(1, min(jobs, hi - lo + 1))
    size, extra = divmod(hi - lo + 1, jobs)
    out = []
    start = lo
    for i in range(jobs):
        end = start + size + (1 if i < extra else 0) - 1
        out.append((start, end))
        start = end + 1
    return out


def solve(k: int, max_n: int, jobs: int = 1) -> list[int]:
    """All n <= max_n with classify(n).k == k, ascending."""
    if k in (4, 5):
        raise NotClassifiedError(
            f"g(n) = {k} is not classified here (solved by G. A. Miller)"
        )
    if k not in CLASSIFIED:
        raise ValueError(f"k must be one of {CLASSIFIED}")
    if not 1 <= max_n <= 10**7:
        raise ValueError("max_n must lie in [1, 10**7]")
    tasks = [(k, lo, hi) for lo, hi in shards(1, max_n, jobs)]
    if jobs <= 1:
        chunks = map(_classify_range, tasks)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_classify_range, tasks))
    return [n for chunk in chunks for n in chunk]
