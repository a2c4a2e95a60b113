"""Small exact number-theory helpers shared across the package.

Everything is plain arbitrary-precision integer arithmetic: deterministic
Miller-Rabin primality, trial-division / Brent-rho factorization with an
explicit work budget, Moebius values (cached), divisor lists and p-adic
valuations of integers.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import DomainError, FactorizationTimeoutError

# Deterministic witness set for n < 3.3 * 10^24 (far beyond anything the
# package touches at desk scale).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

#: Total Brent-rho work allowed per factorization call before giving up.
DEFAULT_FACTOR_BUDGET = 2_000_000

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
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


def v_p(n: int, p: int) -> int:
    """Exact p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("v_p(0) is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _rho_brent(n: int, budget: int) -> tuple[int | None, int]:
    """One Brent-cycle factor hunt; returns (factor or None, work spent)."""
    if n % 2 == 0:
        return 2, 0
    spent = 0
    for c in range(1, 64):
        y, r, q = 2, 1, 1
        g = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                spent += min(128, r - k)
                if spent > budget:
                    return None, spent
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            # backtrack
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                spent += 1
                if spent > budget:
                    return None, spent
        if g != n:
            return g, spent
    return None, spent


def factorize(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}.

    Trial division by small primes first, then Brent's rho on what is left.
    ``budget`` caps the total rho work; exceeding it raises
    FactorizationTimeoutError carrying the partial factorization and the
    unfactored cofactor, so the failure is explicit rather than silent.
    """
    if n < 1:
        raise DomainError(f"cannot factor {n}; need a positive integer")
    out: dict[int, int] = {}
    for q in range(2, 10_000):
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    if n == 1:
        return out
    stack = [n]
    remaining = budget
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f, spent = _rho_brent(m, remaining)
        remaining -= spent
        if f is None or f in (1, m):
            raise FactorizationTimeoutError(
                f"factorization budget exhausted with cofactor {m}",
                partial=out,
                cofactor=m,
            )
        stack.append(f)
        stack.append(m // f)
    return out


def prime_factors(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> frozenset[int]:
    return frozenset(factorize(n, budget))


@lru_cache(maxsize=4096)
def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius({n}) undefined")
    if n == 1:
        return 1
    out = 1
    for q in range(2, n + 1):
        if q * q > n:
            break
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            out = -out
    if n > 1:
        out = -out
    return out


def divisors(n: int) -> list[int]:
    """Sorted list of positive divisors."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]
