"""Number-theoretic kernel: modular arithmetic, primality, symbols, square roots.

Python integers never overflow, so the 64-bit word bound is enforced
explicitly where the rest of the package relies on it (``WORD_MAX``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

WORD_MAX = 2**63 - 1

# Bases 2..37 are a deterministic Miller-Rabin witness set below 3.18e23
# (the smallest strong pseudoprime to all of them), which covers the whole
# signed 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 318_665_857_834_031_151_167_461


def pow_mod(base: int, exponent: int, modulus: int) -> int:
    """Return ``base**exponent mod modulus`` in ``[0, modulus)``."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exponent, modulus)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) = s*a + t*b`` and ``g >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def inverse_mod(a: int, m: int) -> int:
    g, s, _ = ext_gcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} has no inverse modulo {m}")
    return s % m


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.18e23."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError("is_prime is only exact below 3.18e23")
    d, s = n - 1, 0
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


@dataclass(frozen=True, order=True)
class PrimeCandidate:
    """An integer that has passed ``is_prime``."""

    value: int

    def __post_init__(self):
        if not 0 <= self.value <= WORD_MAX or not is_prime(self.value):
            raise ValueError(f"{self.value} is not a prime in the word range")

    def __int__(self) -> int:
        return self.value


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) by Euler's criterion."""
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 1, computed by reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ValueError("jacobi needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def reciprocity_product(p: int, q: int) -> int:
    """Return (p|q)(q|p) for distinct odd primes, checked against the sign rule."""
    if p == q:
        raise ValueError("reciprocity needs distinct primes")
    product = legendre(p, q) * legendre(q, p)
    expected = -1 if ((p - 1) // 2) * ((q - 1) // 2) % 2 else 1
    if product != expected:
        raise ArithmeticError(f"reciprocity failed for ({p}, {q})")
    return product


def sqrt_mod(a: int, p: int) -> int | None:
    """Smaller square root of ``a`` modulo the odd prime ``p``, or None.

    Tonelli-Shanks; of the two roots ``x`` and ``p - x`` the smaller is
    returned so that downstream witnesses are reproducible.
    """
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
        return min(x, p - x)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def primes_between(lo: int, hi: int, segment: int = 1 << 18) -> list[int]:
    """All primes p with lo <= p <= hi, by a segmented sieve of Eratosthenes."""
    if hi < 2 or hi < lo:
        return []
    lo = max(lo, 2)
    root = isqrt(hi)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for i in range(2, isqrt(root) + 1):
        if base[i]:
            base[i * i :: i] = False
    small = np.flatnonzero(base)
    out: list[int] = []
    for start in range(lo, hi + 1, segment):
        stop = min(start + segment, hi + 1)
        mark = np.ones(stop - start, dtype=bool)
        for p in small:
            p = int(p)
            first = max(p * p, -(-start // p) * p)
            if first >= stop:
                continue
            mark[first - start :: p] = False
        out.extend((np.flatnonzero(mark) + start).tolist())
    return out
