"""The three sets A = {3x^2 - y^2}, B = {x^2 + y^2}, C = {2(x^2 - xy + y^2)} over the integers."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .arith import WORD_MAX, is_prime
from .errors import BoundExceeded
from .forms import Family, represent_indefinite

# Reference representations of 2p for three primes p = 1 mod 12:
# p -> ((a, b) with a^2+b^2 = 2p, (m, n) with m^2-mn+n^2 = p, (x, y) with 3x^2-y^2 = 2p)
REFERENCE_TRIPLES = {
    13: ((1, 5), (3, 4), (3, 1)),
    37: ((5, 7), (3, 7), (5, 1)),
    61: ((1, 11), (4, 9), (9, 11)),
}


def _triple_holds(p, triple) -> bool:
    (a, b), (m, n), (x, y) = triple
    return a * a + b * b == 2 * p and m * m - m * n + n * n == p and 3 * x * x - y * y == 2 * p


for _p, _triple in REFERENCE_TRIPLES.items():
    if not _triple_holds(_p, _triple):
        raise ValueError(f"reference triple for {_p} does not evaluate")


def value_A(x: int, y: int) -> int:
    return 3 * x * x - y * y


def value_B(x: int, y: int) -> int:
    return x * x + y * y


def value_C(x: int, y: int) -> int:
    return 2 * (x * x - x * y + y * y)


@dataclass(frozen=True)
class TrinityMembership:
    t: int
    in_A: bool
    in_B: bool
    in_C: bool
    witnesses: dict = field(default_factory=dict, compare=False)


def _witness_A(t: int):
    if t == 0:
        return 0, 0
    # 3x^2 - y^2 = t is qb^2 - a^2 = t for t > 0 and a^2 - qb^2 = -t for t < 0, q = 3
    w = represent_indefinite(abs(t), 3, Family.H1 if t > 0 else Family.H2)
    return None if w is None else (w.b, w.a)


def _witness_B(t: int):
    if t < 0:
        return None
    for x in range(isqrt(t // 2) + 1):
        rest = t - x * x
        y = isqrt(rest)
        if y * y == rest:
            return x, y
    return None


def _eisenstein(n: int):
    """(x, y), x, y >= 0, with x^2 - xy + y^2 = n, smallest y first."""
    # (2x - y)^2 + 3y^2 = 4n; s = 2x - y always has the parity of y
    for y in range(isqrt(4 * n // 3) + 1):
        rest = 4 * n - 3 * y * y
        s = isqrt(rest)
        if s * s == rest:
            return (s + y) // 2, y
    return None


def _witness_C(t: int):
    if t < 0 or t % 2:
        return None
    return _eisenstein(t // 2)


def membership(t: int) -> TrinityMembership:
    if abs(t) > WORD_MAX // 4:
        raise BoundExceeded(f"{t} is outside the word budget")
    found = {"A": _witness_A(t), "B": _witness_B(t), "C": _witness_C(t)}
    checks = {"A": value_A, "B": value_B, "C": value_C}
    for name, wit in found.items():
        if wit is not None and checks[name](*wit) != t:
            raise ArithmeticError(f"{name} witness {wit} does not evaluate to {t}")
    return TrinityMembership(
        t,
        found["A"] is not None,
        found["B"] is not None,
        found["C"] is not None,
        {k: v for k, v in found.items() if v is not None},
    )


@dataclass
class InclusionReport:
    bound: int
    violations: list = field(default_factory=list)
    strictness_witnesses: dict = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.violations and len(self.strictness_witnesses) == 3

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "violations": self.violations,
            "strictness_witnesses": self.strictness_witnesses,
        }


def verify_inclusions(N: int) -> InclusionReport:
    """Check A&B <= C, B&C <= A, C&A <= B on [0, N], plus one proper-superset element each."""
    if N < 100:
        raise ValueError("verify_inclusions needs N >= 100")
    report = InclusionReport(N)
    checks = (
        ("A&B<C", lambda m: m.in_A and m.in_B, lambda m: m.in_C),
        ("B&C<A", lambda m: m.in_B and m.in_C, lambda m: m.in_A),
        ("C&A<B", lambda m: m.in_C and m.in_A, lambda m: m.in_B),
    )
    for t in range(N + 1):
        m = membership(t)
        for name, both, sup in checks:
            if both(m) and not sup(m):
                report.violations.append({"t": t, "inclusion": name})
            if sup(m) and not both(m) and name not in report.strictness_witnesses:
                report.strictness_witnesses[name] = t
    return report


def identity_check(x: int, y: int, u: int, v: int) -> bool:
    """Evaluate both product identities for 3x^2 - y^2 style norms exactly."""
    lhs1 = (y * y - 3 * x * x) * (v * v - 3 * u * u)
    rhs1 = (3 * u * x + v * y) ** 2 - 3 * (x * v + u * y) ** 2
    lhs2 = 2 * (x * x - 3 * y * y)
    rhs2 = 3 * (x + y) ** 2 - (x + 3 * y) ** 2
    if max(abs(lhs1), (3 * u * x + v * y) ** 2, 3 * (x * v + u * y) ** 2, 3 * (x + y) ** 2,
           (x + 3 * y) ** 2) > WORD_MAX:
        raise BoundExceeded("identity arguments leave the word budget")
    return lhs1 == rhs1 and lhs2 == rhs2


@dataclass(frozen=True)
class TwelveKTriple:
    p: int
    sum_of_squares: tuple[int, int]
    eisenstein: tuple[int, int]
    three_x2_minus_y2: tuple[int, int]


def twelve_k_plus_one(p: int) -> TwelveKTriple | None:
    """Witnesses that 2p lies in A, B and C, available exactly when p = 1 mod 12.

    The three primes with reference triples return those; others get the
    canonical search results.
    """
    if p <= 3 or not is_prime(p):
        raise ValueError(f"{p} is not a prime above 3")
    if p % 12 != 1:
        return None
    if p in REFERENCE_TRIPLES:
        return TwelveKTriple(p, *REFERENCE_TRIPLES[p])
    m = membership(2 * p)
    eis = _eisenstein(p)
    if not (m.in_A and m.in_B and eis is not None):
        raise ArithmeticError(f"2*{p} is missing from one of A, B, C")
    return TwelveKTriple(p, m.witnesses["B"], eis, m.witnesses["A"])
