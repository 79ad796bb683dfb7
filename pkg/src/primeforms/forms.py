"""Representation witnesses for a^2+qb^2, qb^2-a^2 and a^2-qb^2.

Definite forms are searched exhaustively. Indefinite forms are searched up to
a bound derived from the fundamental Pell solution; square q is handled by
splitting n into divisor pairs. The constructive pieces of the classical
existence proofs (pigeonhole pairs, Euler's descent through an auxiliary
representation) are exposed as separate operations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from .arith import WORD_MAX, is_square, sqrt_mod
from .errors import BoundExceeded, NotApplicable


class Family(str, enum.Enum):
    E = "E"    # a^2 + q b^2
    H1 = "H1"  # q b^2 - a^2
    H2 = "H2"  # a^2 - q b^2


def _evaluate(family: Family, q: int, a: int, b: int) -> int:
    if family is Family.E:
        return a * a + q * b * b
    if family is Family.H1:
        return q * b * b - a * a
    return a * a - q * b * b


@dataclass(frozen=True)
class FormInstance:
    family: Family
    q: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.q < 1:
            raise ValueError("q must be a positive integer")

    def evaluate(self, a: int, b: int) -> int:
        return _evaluate(self.family, self.q, a, b)

    def __str__(self) -> str:
        return f"{self.family.value}({self.q})"


@dataclass(frozen=True)
class Witness:
    """Non-negative (a, b) with form(a, b) = multiplier * n, checked on construction."""

    a: int
    b: int
    multiplier: int
    n: int
    family: Family = Family.E
    q: int = 1

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.multiplier < 1:
            raise ValueError(f"malformed witness {self}")
        value = _evaluate(Family(self.family), self.q, self.a, self.b)
        if value != self.multiplier * self.n:
            raise ArithmeticError(f"witness {self} evaluates to {value}")

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "multiplier": self.multiplier}


@dataclass(frozen=True)
class CFExpansion:
    q: int
    a0: int
    period: tuple[int, ...]


@dataclass(frozen=True)
class PellSolution:
    t: int
    u: int
    q: int


# Below this many candidates a plain loop beats numpy's call overhead.
_VECTOR_MIN = 48
_CHUNK = 8192
_FLOAT_EXACT = 2**52


def _first_square(c0: int, c2: int, lo: int, hi: int) -> tuple[int, int] | None:
    """Smallest b in [lo, hi] with c0 + c2*b^2 a perfect square; returns (a, b).

    The caller guarantees |c0| + |c2|*hi^2 stays inside the word budget.
    """
    if hi < lo:
        return None
    if hi - lo < _VECTOR_MIN or abs(c0) + abs(c2) * hi * hi >= _FLOAT_EXACT:
        for b in range(lo, hi + 1):
            v = c0 + c2 * b * b
            if v >= 0:
                r = isqrt(v)
                if r * r == v:
                    return r, b
        return None
    start = lo
    size = 256
    while start <= hi:
        stop = min(hi + 1, start + size)
        bs = np.arange(start, stop, dtype=np.int64)
        v = c0 + c2 * bs * bs
        v = np.where(v >= 0, v, -1)
        r = np.floor(np.sqrt(np.maximum(v, 0).astype(np.float64))).astype(np.int64)
        r -= r * r > v
        r += (r + 1) * (r + 1) <= v
        hits = np.flatnonzero((r * r == v) & (v >= 0))
        if hits.size:
            i = int(hits[0])
            return int(r[i]), int(bs[i])
        start = stop
        size = min(size * 4, _CHUNK)
    return None


def thue_small_pair(x0: int, p: int) -> tuple[int, int]:
    """Return (a, b) != (0, 0) with a = x0*b (mod p) and |a|, |b| <= isqrt(p).

    Same guarantee as the pigeonhole table u + v*x0 over [0, m]^2, obtained
    by stopping the Euclidean algorithm on (p, x0) at the first remainder
    below sqrt(p).
    """
    if not 0 <= x0 < p:
        raise ValueError("x0 must lie in [0, p)")
    m = isqrt(p)
    r0, r1 = p, x0
    t0, t1 = 0, 1
    while r1 > m:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        t0, t1 = t1, t0 - quot * t1
    return r1, t1


def multiplier_witness(p: int, q: int) -> Witness | None:
    """Pigeonhole witness a^2 + q b^2 = l*p with 1 <= l <= q, or None if -q is a non-residue."""
    x0 = sqrt_mod(-q, p)
    if x0 is None:
        return None
    a, b = thue_small_pair(x0, p)
    value = a * a + q * b * b
    return Witness(abs(a), abs(b), value // p, p, Family.E, q)


def represent_definite(n: int, q: int, ell: int = 1) -> Witness | None:
    """Canonical (a, b) with a^2 + q b^2 = ell*n: smallest b, then smallest a."""
    if n < 1 or q < 1 or ell < 1:
        raise ValueError("n, q and ell must be positive")
    target = ell * n
    if target > WORD_MAX:
        raise BoundExceeded(f"{ell}*{n} exceeds the word budget")
    hit = _first_square(target, -q, 0, isqrt(target // q))
    if hit is None:
        return None
    return Witness(hit[0], hit[1], ell, n, Family.E, q)


def count_canonical_witnesses(p: int, q: int) -> int:
    """Number of a, b >= 0 with a^2 + q b^2 = p; unordered pairs when q = 1."""
    found = set()
    for b in range(isqrt(p // q) + 1):
        rest = p - q * b * b
        if is_square(rest):
            a = isqrt(rest)
            found.add(tuple(sorted((a, b))) if q == 1 else (a, b))
    return len(found)


# (q, l) -> (c, d, m) with c^2 + q d^2 = m*l; m < l is the multiplier reached.
AUXILIARY = {
    (7, 7): (0, 1, 1),
    (17, 9): (1, 1, 2),
    (17, 13): (3, 1, 2),
    (17, 17): (0, 1, 1),
}


def descent_step(w: Witness) -> Witness:
    """One step of Euler's descent on a^2 + q b^2 = l*n with gcd(a, b) = 1.

    With c^2 + q d^2 = m*l on file, l divides M = b^2 c^2 - a^2 d^2 =
    (bc - ad)(bc + ad); the factor it divides fixes the sign in the product
    identity, and dividing the composed representation by l gives m*n.
    """
    if w.family is not Family.E or w.multiplier <= 1:
        raise ValueError("descent needs a definite witness with multiplier > 1")
    a, b, q, ell = w.a, w.b, w.q, w.multiplier
    if gcd(a, b) != 1:
        raise ValueError("descent needs gcd(a, b) = 1")
    try:
        c, d, m = AUXILIARY[(q, ell)]
    except KeyError:
        raise NotApplicable(f"no auxiliary representation for q={q}, l={ell}") from None
    if (b * c - a * d) % ell == 0:
        x, y = a * c + q * b * d, a * d - b * c
    elif (b * c + a * d) % ell == 0:
        x, y = a * c - q * b * d, a * d + b * c
    else:
        raise ArithmeticError(f"{ell} divides neither factor of M for {w}")
    if x % ell or y % ell:
        raise ArithmeticError(f"composition is not divisible by {ell} for {w}")
    return Witness(abs(x) // ell, abs(y) // ell, m, w.n, Family.E, q)


def remove_common_factor(w: Witness) -> Witness:
    g = gcd(w.a, w.b)
    if g <= 1:
        return w
    if w.multiplier % (g * g):
        raise ArithmeticError(f"gcd {g} does not divide out of {w}")
    return Witness(w.a // g, w.b // g, w.multiplier // (g * g), w.n, w.family, w.q)


def descend(w: Witness, targets=frozenset({1, 2}), max_steps: int = 16) -> tuple[Witness, int]:
    """Apply common-factor removal and descent steps until the multiplier is in ``targets``.

    Returns the final witness and the number of steps taken.
    """
    steps = 0
    while w.multiplier not in targets:
        if steps >= max_steps:
            raise ArithmeticError(f"descent did not terminate from {w}")
        reduced = remove_common_factor(w)
        w = reduced if reduced is not w else descent_step(w)
        steps += 1
    return w, steps


def cf_sqrt(q: int) -> CFExpansion:
    """Periodic continued fraction of sqrt(q)."""
    a0 = isqrt(q)
    if q < 2 or a0 * a0 == q:
        raise ValueError(f"{q} is a perfect square")
    m, d, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = d * a - m
        d = (q - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return CFExpansion(q, a0, tuple(period))


def pell_fundamental(q: int) -> PellSolution:
    """Minimal t, u >= 1 with t^2 - q u^2 = 1, read off the convergents of sqrt(q)."""
    cf = cf_sqrt(q)
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    i = 0
    while h * h - q * k * k != 1:
        a = cf.period[i % len(cf.period)]
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        i += 1
    return PellSolution(h, k, q)


_PELL_CACHE: dict[int, PellSolution] = {}


def _pell(q: int) -> PellSolution:
    sol = _PELL_CACHE.get(q)
    if sol is None:
        sol = _PELL_CACHE[q] = pell_fundamental(q)
    return sol


def indefinite_search_bound(n: int, q: int) -> int:
    """B = u*(isqrt(n) + 1), with u from the fundamental Pell solution."""
    return _pell(q).u * (isqrt(n) + 1)


def _represent_square_q(n: int, k: int, family: Family) -> tuple[int, int] | None:
    best = None
    for d in range(1, isqrt(n) + 1):
        if n % d:
            continue
        e = n // d
        if family is Family.H2:
            # a - kb = d, a + kb = e
            if (e - d) % (2 * k):
                continue
            cand = ((e - d) // (2 * k), (d + e) // 2)
        else:
            # kb - a = d, kb + a = e
            if (e - d) % 2 or (e + d) % (2 * k):
                continue
            cand = ((e + d) // (2 * k), (e - d) // 2)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return best[1], best[0]


def represent_indefinite(n: int, q: int, family: Family | str) -> Witness | None:
    """Canonical non-negative (a, b) with qb^2 - a^2 = n (H1) or a^2 - qb^2 = n (H2)."""
    family = Family(family)
    if family is Family.E:
        raise ValueError("represent_indefinite handles H1 and H2 only")
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    if n > WORD_MAX:
        raise BoundExceeded(f"{n} exceeds the word budget")
    k = isqrt(q)
    if k * k == q:
        hit = _represent_square_q(n, k, family)
    else:
        bound = indefinite_search_bound(n, q)
        if q * bound * bound + n > WORD_MAX:
            raise BoundExceeded(f"search bound {bound} for n={n}, q={q} leaves the word budget")
        if family is Family.H2:
            hit = _first_square(n, q, 0, bound)
        else:
            hit = _first_square(-n, q, isqrt(n // q), bound)
    if hit is None:
        return None
    return Witness(hit[0], hit[1], 1, n, family, q)


def represent(n: int, inst: FormInstance) -> Witness | None:
    if n < 1:
        raise ValueError("the representation sets are subsets of the positive integers")
    if inst.family is Family.E:
        return represent_definite(n, inst.q)
    return represent_indefinite(n, inst.q, inst.family)


def in_set(n: int, inst: FormInstance) -> bool:
    return represent(n, inst) is not None
