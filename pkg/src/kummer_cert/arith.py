"""Small integer helpers: primality, bounded factorization, divisors."""

from __future__ import annotations

from math import gcd

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int | None = None) -> dict[int, int] | None:
    """Factor ``n`` by trial division.

    With ``bound`` set, division stops at that bound; the leftover cofactor
    is accepted only if it is 1 or prime. Returns None when the
    factorization could not be completed within the bound.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if bound is not None and d > bound:
            if not is_prime(n):
                return None
            break
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def valuation(n: int, p: int) -> float | int:
    """p-adic valuation; ``float('inf')`` for 0."""
    if n == 0:
        return float("inf")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
