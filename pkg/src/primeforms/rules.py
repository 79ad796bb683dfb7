"""Characterization predicates as data: residue-class rules and polynomial criteria.

Every rule is transcribed as stated, including the cases that turn out to
be wrong; the verification harness is what finds those. Residue sets that are
stated as ``j^2 mod m`` are stored expanded and regenerated at import.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import BudgetExceeded, OutOfDomain
from .forms import Family, FormInstance, Witness, in_set, represent_definite

TABLE_VERSION = "1"
ROOT_SCAN_BUDGET = 10**6


@dataclass(frozen=True)
class ResidueRule:
    q: int
    family: Family
    modulus: int
    residues: frozenset[int]
    exceptional_primes: frozenset[int] = frozenset()
    source: str = ""
    # When stated as {sign * j^2 mod modulus : j in square_roots}.
    square_roots: tuple[int, ...] = ()
    signs: tuple[int, ...] = (1,)

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "q": self.q,
            "modulus": self.modulus,
            "residues": sorted(self.residues),
            "exceptions": sorted(self.exceptional_primes),
            "source": self.source,
        }


def _rule(family, q, modulus, residues, exceptional=(), source="", roots=(), signs=(1,)):
    return ResidueRule(q, Family(family), modulus, frozenset(residues),
                       frozenset(exceptional), source, tuple(roots), tuple(signs))


_RULES = (
    # a^2 + q b^2
    _rule("E", 1, 4, {1}, {2}, "thm1_E (I)"),
    _rule("E", 2, 8, {1, 3}, {2}, "thm1_E (II)"),
    _rule("E", 3, 6, {1}, {3}, "thm1_E (III)"),
    _rule("E", 4, 4, {1}, (), "thm1_E (IV)"),
    _rule("E", 5, 20, {1, 9}, {5}, "thm1_E (V)", (1, 3)),
    _rule("E", 6, 24, {1, 7}, (), "thm1_E (VI)"),
    _rule("E", 7, 14, {1, 9, 11}, {7}, "thm1_E (VII)", (1, 3, 5)),
    _rule("E", 8, 8, {1}, (), "thm1_E (VIII)"),
    _rule("E", 9, 36, {1, 13, 25}, (), "thm1_E (IX)", (1, 5, 7)),
    _rule("E", 10, 40, {1, 9, 11, 19}, (), "thm1_E (X)"),
    _rule("E", 12, 48, {1, 13, 25, 37}, (), "thm1_E (XI)"),
    _rule("E", 13, 52, {1, 9, 17, 25, 29, 49}, (), "thm1_E (XII)", (1, 3, 5, 7, 9, 11)),
    _rule("E", 15, 60, {1, 19, 31, 49}, (), "thm1_E (XIII)"),
    _rule("E", 16, 8, {1}, (), "thm1_E (XIV)"),
    # q b^2 - a^2; "p != 2" is stored as the odd class mod 2
    _rule("H1", 1, 2, {1}, (), "thm2_H1 (I)"),
    _rule("H1", 2, 8, {1, 7}, {2}, "thm2_H1 (II), main clause +-1 mod 8"),
    _rule("H1", 3, 12, {11}, {2, 3}, "thm2_H1 (III)"),
    _rule("H1", 4, 4, {3}, (), "thm2_H1 (IV)"),
    _rule("H1", 5, 20, {1, 9, 11, 19}, {5}, "thm2_H1 (V)", (1, 3), (1, -1)),
    _rule("H1", 6, 24, {5, 23}, {2}, "thm2_H1 (VI)"),
    _rule("H1", 7, 14, {3, 5, 13}, {7}, "thm2_H1 (VII)"),
    _rule("H1", 8, 32, {7, 15, 23, 31}, {7}, "thm2_H1 (VIII)", (1, 3, 5, 7), (-1,)),
    _rule("H1", 9, 6, {5}, (), "thm2_H1 (IX)"),
    _rule("H1", 10, 40, {1, 9, 31, 39}, (), "thm2_H1 (X)"),
    _rule("H1", 11, 44, {7, 19, 35, 39, 43}, {2, 11}, "thm2_H1 (XI)", (1, 3, 5, 7, 9), (-1,)),
    # a^2 - q b^2
    _rule("H2", 1, 2, {1}, (), "thm3_H2 (I)"),
    _rule("H2", 2, 8, {1, 7}, {2}, "thm3_H2 (II)"),
    _rule("H2", 3, 12, {1}, (), "thm3_H2 (III)"),
    _rule("H2", 4, 4, {1}, (), "thm3_H2 (IV)"),
    _rule("H2", 5, 20, {1, 9, 11, 19}, {5}, "thm3_H2 (V)", (1, 3), (1, -1)),
    _rule("H2", 6, 24, {1, 19}, {3}, "thm3_H2 (VI)"),
    _rule("H2", 7, 14, {1, 9, 11}, {2}, "thm3_H2 (VII)"),
    _rule("H2", 8, 32, {1, 9, 17, 25}, {7}, "thm3_H2 (VIII)", (1, 3, 5, 7)),
    _rule("H2", 9, 6, {1}, (), "thm3_H2 (IX)"),
    _rule("H2", 10, 40, {1, 9, 31, 39}, (), "thm3_H2 (X)"),
    _rule("H2", 11, 44, {1, 5, 9, 25, 37}, (), "thm3_H2 (XI)", (1, 3, 5, 7, 9)),
)


def _validate_rule(rule: ResidueRule) -> None:
    for r in rule.residues:
        if not 0 <= r < rule.modulus:
            raise ValueError(f"{rule.source}: residue {r} outside [0, {rule.modulus})")
        if gcd(r, rule.modulus) != 1:
            raise ValueError(f"{rule.source}: residue {r} cannot hold a prime")
    if rule.square_roots:
        regenerated = {(s * j * j) % rule.modulus for j in rule.square_roots for s in rule.signs}
        if regenerated != rule.residues:
            raise ValueError(f"{rule.source}: stored residues differ from the j^2 expansion")


for _r in _RULES:
    _validate_rule(_r)

_RULE_INDEX = {(r.family, r.q): r for r in _RULES}


def rule_table() -> tuple[ResidueRule, ...]:
    return _RULES


def get_rule(family: Family | str, q: int) -> ResidueRule:
    try:
        return _RULE_INDEX[(Family(family), q)]
    except KeyError:
        raise KeyError(f"no residue rule for {family}({q})") from None


def residue_predicate(p: int, rule: ResidueRule) -> bool:
    return p in rule.exceptional_primes or p % rule.modulus in rule.residues


@dataclass(frozen=True)
class PolyCriterion:
    """Conjunction of "f has a root mod p" conditions and side congruences.

    Coefficients are dense, highest degree first.
    """

    q: int
    conditions: tuple[tuple[int, ...], ...]
    side_congruences: tuple[tuple[int, int], ...] = ()
    floor: int = 0
    source: str = ""
    note: str = ""

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "conditions": [list(c) for c in self.conditions],
            "side_congruences": [list(s) for s in self.side_congruences],
            "floor": self.floor,
            "source": self.source,
            "note": self.note,
        }


_CRITERIA = (
    PolyCriterion(11, ((1, 0, 4, 0, 4, 0, 44),), (), 2, "thm4_poly (I): (X^3+2X)^2+44"),
    PolyCriterion(14, ((1, 0, 14), (1, 0, 2, 0, -7)), (), 0,
                  "thm4_poly (II): X^2+14 and (X^2+1)^2-8"),
    PolyCriterion(17, ((1, 0, 17), (1, 0, -2, 0, 17)), (), 0,
                  "thm4_poly (III): X^2+17 and (X^2-1)^2+16"),
    PolyCriterion(18, ((1, 0, -6, 0, 81),), (), 0, "thm4_poly (IV): (X^2-3)^2+18*2^2"),
    PolyCriterion(19, ((1, 0, -8, 0, 16, 0, 304),), (), 0, "thm4_poly (V): (X^3-4X)^2+19*4^2",
                  "lowercase x in the stated polynomial read as X"),
    PolyCriterion(20, ((1, 0, 0, 0, 12, 0, 0, 0, 16),), (), 0, "thm4_poly (VI): (X^4-4)^2+20X^4"),
    PolyCriterion(21, ((1, 0, 0, 0, 92, 0, 0, 0, 16),), (), 0, "thm4_poly (XXI): (X^4+4)^2+84X^4"),
    PolyCriterion(22, ((1, 0, 6, 0, 361),), (), 22, "thm4_poly (XXII): (X^2+3)^2+22*4^2"),
    PolyCriterion(23, ((1, 0, 30, 0, 225, 0, 8303),), (), 0,
                  "thm4_poly (XXIII): (X^3+15X)^2+23*19^2"),
    PolyCriterion(24, ((1, 0, 0, 0, 392, 0, 0, 0, 16),), (), 0,
                  "thm4_poly (XXIV): (X^4+4)^2+24(2X)^4"),
    PolyCriterion(25, ((1, 0, 0, 0, 100),), (), 25, "thm4_poly (XXV): X^4+100"),
    PolyCriterion(27, ((1, 0, 0, -2),), ((3, 1),), 0, "thm4_poly (XXVII): X^3-2, p = 1 mod 3"),
    PolyCriterion(29, ((1, 0, -2, 0, 1, 0, 116),), ((4, 1),), 0,
                  "thm4_poly (XXVIV): (X^3-X)^2+116, p = 1 mod 4"),
    PolyCriterion(31, ((1, 0, 11, 0, 38, 0, 31),), (), 0,
                  "thm4_poly (XXXI): (X^3-10X)^2+31(X^2-1)^2"),
    PolyCriterion(32, ((1, 0, -2, 0, 2),), ((8, 1),), 0,
                  "thm4_poly (XXXII): (X^2-1)^2+1, p = 1 mod 8"),
    PolyCriterion(37, ((1, 0, 31, 0, 9),), (), 0, "thm4_poly (XXXVII): X^4+31X^2+9"),
    PolyCriterion(64, ((1, 0, 0, 0, -2),), ((4, 1),), 0, "thm4_poly (LXIV): X^4-2, p = 1 mod 4"),
)

_CRITERION_INDEX = {c.q: c for c in _CRITERIA}


def criterion_table() -> tuple[PolyCriterion, ...]:
    return _CRITERIA


def get_criterion(q: int) -> PolyCriterion:
    try:
        return _CRITERION_INDEX[q]
    except KeyError:
        raise KeyError(f"no polynomial criterion for q={q}") from None


def poly_eval(coeffs, x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_has_root(coeffs, p: int) -> bool:
    """Exhaustive scan of x in [0, p) for a root of the polynomial mod p."""
    if p >= ROOT_SCAN_BUDGET:
        raise BudgetExceeded(f"root scan limited to p < {ROOT_SCAN_BUDGET}")
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs:
        acc = (acc * xs + c) % p
    return bool((acc == 0).any())


def in_criterion_domain(p: int, crit: PolyCriterion) -> bool:
    return p > 2 and (2 * crit.q) % p != 0 and p > crit.floor


def criterion_predicate(p: int, crit: PolyCriterion) -> bool:
    if not in_criterion_domain(p, crit):
        raise OutOfDomain(f"p={p} is outside the domain of {crit.source}")
    if any(p % m != r for m, r in crit.side_congruences):
        return False
    return all(poly_has_root(c, p) for c in crit.conditions)


_X8_PLUS_4 = (1, 0, 0, 0, 0, 0, 0, 0, 4)


def barrucand_cohn(p: int) -> bool:
    """p = 1 mod 8 and x^8 = -4 (mod p) is solvable."""
    if p % 2 == 0:
        raise OutOfDomain("barrucand_cohn needs an odd prime")
    return p % 8 == 1 and poly_has_root(_X8_PLUS_4, p)


@dataclass(frozen=True)
class KaplanskyClass:
    p: int
    in_P32: bool
    in_P64: bool
    witnesses: dict = field(default_factory=dict, compare=False)


def kaplansky_classify(p: int) -> KaplanskyClass:
    if p % 8 != 1:
        raise OutOfDomain(f"{p} is not 1 mod 8")
    w32 = represent_definite(p, 32)
    w64 = represent_definite(p, 64)
    wits = {q: w.as_dict() for q, w in ((32, w32), (64, w64)) if w is not None}
    return KaplanskyClass(p, w32 is not None, w64 is not None, wits)


THM17_RESIDUES = frozenset({1, 9, 13, 21, 25, 33, 49, 53})
THM11_RESIDUES = frozenset((j * j) % 22 for j in range(1, 10, 2))
THM19_RESIDUES = frozenset((j * j) % 38 for j in range(1, 18, 2))

if THM17_RESIDUES != frozenset((j * j) % 68 for j in range(1, 16, 2)):
    raise ValueError("odd squares mod 68 differ from the stated expansion")


def thm17_predicate(p: int) -> bool:
    if p <= 17:
        raise OutOfDomain("the q=17 multiplier theorem covers p > 17")
    return p % 68 in THM17_RESIDUES


def thm17_witness(p: int) -> Witness | None:
    """a^2 + 17 b^2 = l*p with l in {1, 2}, trying l = 1 first."""
    if p <= 17:
        raise OutOfDomain("the q=17 multiplier theorem covers p > 17")
    for ell in (1, 2):
        w = represent_definite(p, 17, ell)
        if w is not None:
            return w
    return None


_THM11_19 = {"q11": (11, 22, THM11_RESIDUES, (1, 3)), "q19": (19, 38, THM19_RESIDUES, (4,))}


def _variant(variant: str):
    try:
        return _THM11_19[variant]
    except KeyError:
        raise ValueError(f"variant must be q11 or q19, not {variant!r}") from None


def thm11_19_predicate(p: int, variant: str) -> bool:
    q, modulus, residues, _ = _variant(variant)
    if p <= q:
        raise OutOfDomain(f"variant {variant} covers p > {q}")
    return p % modulus in residues


def thm11_19_witness(p: int, variant: str) -> Witness | None:
    q, _, _, multipliers = _variant(variant)
    if p <= q:
        raise OutOfDomain(f"variant {variant} covers p > {q}")
    for ell in multipliers:
        w = represent_definite(p, q, ell)
        if w is not None:
            return w
    return None


def export_tables() -> dict:
    return {
        "table_version": TABLE_VERSION,
        "residue_rules": [r.to_json() for r in _RULES],
        "poly_criteria": [c.to_json() for c in _CRITERIA],
    }


def export_tables_json() -> str:
    return json.dumps(export_tables(), indent=2, sort_keys=True) + "\n"


def in_form(p: int, family: Family | str, q: int) -> bool:
    return in_set(p, FormInstance(Family(family), q))
