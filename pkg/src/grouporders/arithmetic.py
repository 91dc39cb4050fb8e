"""Exact integer number theory for inputs up to 2**63.

Primality is decided by trial division for small n and a Miller-Rabin test
with a base set that is deterministic far beyond 64 bits.  Factorization is
trial division by the primes below 10**6 followed by Brent's variant of
Pollard rho on whatever cofactor is left.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_INPUT = 2**63
TRIAL_LIMIT = 10**6

# Deterministic for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes; all primes <= limit."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_LIMIT))


_SMALL_PRIMES = tuple(primes_up_to(1000))
_SMALL_SET = frozenset(_SMALL_PRIMES)


def _check_range(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n > MAX_INPUT:
        raise ValueError(f"{n} exceeds the supported range (2**63)")


def is_prime(n: int) -> bool:
    _check_range(n)
    if n < 2:
        return False
    if n < 1000:
        return n in _SMALL_SET
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending (prime, exponent) pairs."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for p, a in self.entries:
            if p <= last or a < 1:
                raise ValueError(f"malformed factorization {self.entries}")
            last = p

    @property
    def n(self) -> int:
        return math.prod(p**a for p, a in self.entries)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def is_squarefree(self) -> bool:
        return all(a == 1 for _, a in self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "1"
        return " * ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.entries)


def factorize(n: int) -> Factorization:
    _check_range(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            found[p] = a
    if n > 1:
        if n < TRIAL_LIMIT * TRIAL_LIMIT:
            # every factor below 10**6 is gone, so what remains is prime
            found[n] = found.get(n, 0) + 1
        else:
            _split_large(n, found)
    return Factorization(tuple(sorted(found.items())))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def big_omega(n: int) -> int:
    """lambda(n): number of prime factors counted with multiplicity."""
    return sum(factorize(n).exponents)


def is_cyclic_number(n: int) -> bool:
    """True iff gcd(n, phi(n)) = 1, i.e. every group of order n is cyclic."""
    return math.gcd(n, euler_phi(n)) == 1


def w(r: int, s: int) -> int:
    """Divisibility indicator: 1 if s divides r, else 0."""
    if s < 1:
        raise ValueError("w(r, s) needs s >= 1")
    return 1 if r % s == 0 else 0


def primes_in_progression(
    residue: int,
    modulus: int,
    avoid: Iterable[tuple[int, int]] = (),
    bound: int | None = None,
    start: int = 2,
) -> Iterator[int]:
    """Yield primes p >= start, p = residue (mod modulus), in increasing order.

    ``avoid`` holds pairs (c, m) meaning p must not be congruent to c mod m.
    Unbounded when ``bound`` is None.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(residue, modulus) != 1:
        raise ValueError(f"gcd({residue}, {modulus}) != 1")
    avoid = tuple((c % m, m) for c, m in avoid)
    x = residue % modulus
    if x < start:
        x += (start - x + modulus - 1) // modulus * modulus
    while bound is None or x <= bound:
        if all(x % m != c for c, m in avoid) and is_prime(x):
            yield x
        x += modulus


def prime_in_progression(
    residue: int,
    modulus: int,
    avoid: Iterable[tuple[int, int]] = (),
    bound: int = 10**6,
) -> int | None:
    """Smallest prime <= bound in the progression satisfying ``avoid``, else None."""
    return next(primes_in_progression(residue, modulus, avoid, bound), None)
