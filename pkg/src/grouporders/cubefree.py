"""Exact group counts for the small cube-free families and the dispatcher ``count``.

``count(n)`` splits Γ(n) into arithmetically independent parts, counts every
part exactly where a closed form is known and multiplies.  Parts outside the
known families make the whole result unsupported; a proven lower bound is
attached when one is available.

The closed forms for p^2 q, p^3 q, p^2 q^2 and p^2 q r are the odd-prime
formulas from the literature on groups of cube-free order.  Their values on
the shapes that matter here are cross-checked in the test suite against
published representative counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arithmetic import factorize, w
from .graph import GraphSizeError, HolderGraph, build_graph, decompose
from .holder import PRIME_POWER_COUNTS, g_holder
from .patterns import P_TO_SQ_WEAK, SQ_TO_P_WEAK, SQ_TO_P_STRONG, match, pattern

FOURTH_POWER_BOUND = 14

REASONS = ("fourth-power", "even-square-form", "unclassified-shape", "too-large")


@dataclass(frozen=True)
class CountResult:
    status: str  # "exact" | "unsupported"
    value: int | None = None
    reason: str | None = None
    lower_bound: int | None = None

    def __post_init__(self) -> None:
        if self.status == "exact":
            if self.value is None or self.value < 1:
                raise ValueError("exact results carry a positive value")
        elif self.status == "unsupported":
            if self.value is not None:
                raise ValueError("unsupported results never carry a value")
            if self.reason not in REASONS:
                raise ValueError(f"unknown reason {self.reason!r}")
        else:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    @classmethod
    def of(cls, value: int) -> CountResult:
        return cls("exact", value)

    @classmethod
    def unsupported(cls, reason: str, lower_bound: int | None = None) -> CountResult:
        return cls("unsupported", None, reason, lower_bound)

    def to_dict(self) -> dict:
        d = {"status": self.status}
        if self.exact:
            d["value"] = self.value
        else:
            d["reason"] = self.reason
            d["lower_bound"] = self.lower_bound
        return d


class UnsupportedOrder(ValueError):
    def __init__(self, reason: str, lower_bound: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.lower_bound = lower_bound


def _odd_distinct(*primes: int) -> None:
    if any(p == 2 for p in primes):
        raise UnsupportedOrder("even-square-form")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"closed form produced the non-integer {x}")
    return int(x)


def g_prime_power(p: int, a: int) -> int:
    if a >= 4:
        raise UnsupportedOrder("fourth-power", FOURTH_POWER_BOUND)
    if a < 1:
        raise ValueError("exponent must be >= 1")
    return PRIME_POWER_COUNTS[a]


def g_2p2(p: int) -> int:
    """Groups of order 2p^2, p odd."""
    _odd_distinct(p)
    return 5


def g_p2q(p: int, q: int) -> int:
    """Groups of order p^2 q for odd primes p != q."""
    _odd_distinct(p, q)
    value = (
        2
        + Fraction(q + 5, 2) * w(p - 1, q)
        + w(p + 1, q)
        + 2 * w(q - 1, p)
        + w(q - 1, p * p)
    )
    return _exact_int(value)


def g_p3q(p: int, q: int) -> int:
    """Groups of order p^3 q for odd primes p != q.

    The (q^2+13q+36)/6 coefficient is fractional when q = 1 (mod 3); the
    companion 2/3 term restores integrality, so the sum is formed exactly.
    """
    _odd_distinct(p, q)
    value = (
        5
        + Fraction(q * q + 13 * q + 36, 6) * w(p - 1, q)
        + (p + 5) * w(q - 1, p)
        + Fraction(2, 3) * w(q - 1, 3) * w(p - 1, q)
        + w((p + 1) * (p * p + p + 1), q) * (1 - w(p - 1, q))
        + w(p + 1, q)
        + 2 * w(q - 1, p * p)
        + w(q - 1, p**3)
    )
    return _exact_int(value)


def g_p2q2(p: int, q: int) -> int:
    """Groups of order p^2 q^2 for odd primes p < q."""
    _odd_distinct(p, q)
    if p >= q:
        raise ValueError("g_p2q2 expects p < q")
    value = (
        4
        + Fraction(p * p + p + 4, 2) * w(q - 1, p * p)
        + (p + 6) * w(q - 1, p)
        + 2 * w(q + 1, p)
        + w(q + 1, p * p)
    )
    return _exact_int(value)


def _h_p2qr(p: int, q: int, r: int) -> Fraction:
    return Fraction(
        2
        + w(p * p - 1, q * r)
        + 2 * w(r - 1, p * q)
        + w(r - 1, p) * w(p - 1, q)
        + w(r - 1, p * p * q)
        + w(r - 1, p) * w(q - 1, p)
        + 2 * w(q - 1, p)
        + 3 * w(p - 1, q)
        + 2 * w(r - 1, p)
        + 2 * w(r - 1, q)
        + w(r - 1, p * p)
        + w(q - 1, p * p)
        + w(p + 1, r)
        + w(p + 1, q)
    )


def _k_p2qr(p: int, q: int, r: int) -> Fraction:
    return (
        Fraction(q * r + 1, 2) * w(p - 1, q * r)
        + Fraction(r + 5, 2) * w(p - 1, r) * (1 + w(p - 1, q))
        + (p * p - p) * w(q - 1, p * p) * w(r - 1, p * p)
        + (p - 1)
        * (
            w(q - 1, p * p) * w(r - 1, p)
            + w(r - 1, p * p) * w(q - 1, p)
            + 2 * w(r - 1, p) * w(q - 1, p)
        )
        + Fraction((q - 1) * (q + 4), 2) * w(p - 1, q) * w(r - 1, q)
        + Fraction(q - 1, 2)
        * (
            w(p + 1, q) * w(r - 1, q)
            + w(p - 1, q)
            + w(p - 1, q * r)
            + 2 * w(r - 1, p * q) * w(p - 1, q)
        )
    )


def g_p2qr_parts(p: int, q: int, r: int) -> tuple[int, int]:
    """The shape-only part and the label-dependent part of g(p^2 q r)."""
    _odd_distinct(p, q, r)
    if q > r:
        q, r = r, q
    return _exact_int(_h_p2qr(p, q, r)), _exact_int(_k_p2qr(p, q, r))


def g_p2qr(p: int, q: int, r: int) -> int:
    """Groups of order p^2 q r for distinct odd primes (q, r in either order)."""
    h, k = g_p2qr_parts(p, q, r)
    return h + k


# q, r --> p^2 weak, p^2 --> s weak, nothing else
ADMISSIBLE_P2QRS = pattern(
    "p^2 q r s",
    {("q", "p"): P_TO_SQ_WEAK, ("r", "p"): P_TO_SQ_WEAK, ("p", "s"): SQ_TO_P_WEAK},
)
# same with p^2 -> s strong; strictly more groups than the weak case
STRONG_P2QRS = pattern(
    "p^2 q r s",
    {("q", "p"): P_TO_SQ_WEAK, ("r", "p"): P_TO_SQ_WEAK, ("p", "s"): SQ_TO_P_STRONG},
)


def g_p2qrs(p: int, q: int, r: int, s: int) -> CountResult:
    """Groups of order p^2 q r s; exact only for the one admissible shape."""
    try:
        _odd_distinct(p, q, r, s)
    except UnsupportedOrder as exc:
        return CountResult.unsupported(exc.reason)
    g = build_graph(p * p * q * r * s)
    if match(ADMISSIBLE_P2QRS, g) is not None:
        return CountResult.of(7)
    if len(decompose(g).components) != 1 or len(decompose(g).prime_powers):
        return CountResult.unsupported("unclassified-shape")
    sq = g.exponents.index(2)
    others = [i for i in range(4) if i != sq]
    inner = sum(1 for (i, j) in g.edges if i in others and j in others)
    if inner >= 3:
        bound = 9
    elif inner in (1, 2) or match(STRONG_P2QRS, g) is not None:
        bound = 8
    else:
        bound = _connected_bound(g)
    return CountResult.unsupported("unclassified-shape", bound)


def _connected_bound(g: HolderGraph) -> int | None:
    if any(a >= 4 for a in g.exponents):
        return None
    return math.prod(PRIME_POWER_COUNTS[a] for a in g.exponents) + len(g) - 1


def count_component(g: HolderGraph) -> CountResult:
    """Exact count of one connected part of Γ(n) (or of an isolated prime power)."""
    exps = g.exponents
    primes = g.primes
    if any(a >= 4 for a in exps):
        return CountResult.unsupported("fourth-power", FOURTH_POWER_BOUND)
    if len(g) == 1:
        return CountResult.of(g_prime_power(primes[0], exps[0]))
    if all(a == 1 for a in exps):
        try:
            return CountResult.of(g_holder(g))
        except GraphSizeError:
            return CountResult.unsupported("too-large", _connected_bound(g))
    shape = tuple(sorted(exps, reverse=True))
    sq = [p for p, a in g.vertices if a >= 2]
    simple = [p for p, a in g.vertices if a == 1]
    try:
        if shape == (2, 1):
            p, q = sq[0], simple[0]
            if q == 2:
                return CountResult.of(g_2p2(p))
            return CountResult.of(g_p2q(p, q))
        if shape == (3, 1):
            return CountResult.of(g_p3q(sq[0], simple[0]))
        if shape == (2, 2):
            return CountResult.of(g_p2q2(min(sq), max(sq)))
        if shape == (2, 1, 1):
            return CountResult.of(g_p2qr(sq[0], *simple))
        if shape == (2, 1, 1, 1):
            return g_p2qrs(sq[0], *simple)
    except UnsupportedOrder as exc:
        return CountResult.unsupported(exc.reason, _connected_bound(g))
    if 2 not in primes and shape in ((3, 1, 1), (2, 2, 1)):
        # both shapes are shown inadmissible for odd orders, and the generic
        # bound already exceeds 5
        return CountResult.unsupported("unclassified-shape", 8)
    return CountResult.unsupported("unclassified-shape", _connected_bound(g))


def count(n: int) -> CountResult:
    if not isinstance(n, int) or n < 1:
        raise ValueError("count requires a positive integer")
    f = factorize(n)
    if any(a >= 4 for a in f.exponents):
        return CountResult.unsupported("fourth-power", FOURTH_POWER_BOUND)
    parts = decompose(build_graph(f)).parts
    value = 1
    bound: int | None = 1
    reason = None
    for part in parts:
        res = count_component(part)
        if res.exact:
            value *= res.value
            if bound is not None:
                bound *= res.value
        else:
            reason = reason or res.reason
            bound = bound * res.lower_bound if bound is not None and res.lower_bound else None
    if reason is None:
        return CountResult.of(value)
    return CountResult.unsupported(reason, bound)
