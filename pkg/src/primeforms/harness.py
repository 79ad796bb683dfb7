"""Range verification of every predicate against its witness oracle.

A theorem tag names a predicate (residue rule, polynomial criterion,
multiplier theorem, ...) and an oracle that searches for an explicit
representation. ``verify_theorem`` runs both over all primes in the domain
and records every disagreement.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from math import gcd

from .arith import primes_between
from .errors import BudgetExceeded
from .forms import Family, FormInstance, represent, represent_definite
from .rules import (
    ROOT_SCAN_BUDGET,
    TABLE_VERSION,
    barrucand_cohn,
    criterion_predicate,
    get_criterion,
    get_rule,
    in_criterion_domain,
    kaplansky_classify,
    residue_predicate,
    thm11_19_predicate,
    thm17_predicate,
)

WORKERS_ENV = "PRIMEFORMS_WORKERS"
PROBLEM_Q_MAX = 50
# Below this many primes a process pool costs more than it saves.
_PARALLEL_MIN = 2000


def default_workers() -> int:
    value = os.environ.get(WORKERS_ENV)
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1


def _witness_dict(w):
    return None if w is None else w.as_dict()


def _record(p, predicate, found, witness, kind="biconditional"):
    return {"p": p, "kind": kind, "predicate": predicate, "witness_found": found,
            "witness": _witness_dict(witness)}


def _check_residue(family):
    def check(q, p):
        predicate = residue_predicate(p, get_rule(family, q))
        w = represent(p, FormInstance(family, q))
        if predicate != (w is not None):
            return [_record(p, predicate, w is not None, w)]
        return []
    return check


def _check_poly(q, p):
    predicate = criterion_predicate(p, get_criterion(q))
    w = represent_definite(p, q)
    if predicate != (w is not None):
        return [_record(p, predicate, w is not None, w)]
    return []


def _multiplier_check(q, p, predicate, multipliers, exclusive):
    found = [w for w in (represent_definite(p, q, ell) for ell in multipliers) if w is not None]
    out = []
    if predicate != bool(found):
        out.append(_record(p, predicate, bool(found), found[0] if found else None))
    if exclusive and len(found) > 1:
        out.append(_record(p, predicate, True, found[1], "exclusivity"))
    return out


def _check_thm41(q, p):
    return _multiplier_check(17, p, thm17_predicate(p), (1, 2), True)


def _check_thm42(q, p):
    if q == 11:
        return _multiplier_check(11, p, thm11_19_predicate(p, "q11"), (1, 3), True)
    return _multiplier_check(19, p, thm11_19_predicate(p, "q19"), (4,), False)


def _check_kaplansky(q, p):
    cls = kaplansky_classify(p)
    exactly_one = p % 16 == 9
    observed = cls.in_P32 != cls.in_P64
    if exactly_one != observed:
        rec = _record(p, exactly_one, observed, None, "dichotomy")
        rec["witness"] = cls.witnesses
        return [rec]
    return []


def _check_barrucand_cohn(q, p):
    predicate = barrucand_cohn(p)
    oracle = criterion_predicate(p, get_criterion(32))
    if predicate != oracle:
        return [_record(p, predicate, oracle, represent_definite(p, 32), "equivalence")]
    return []


@dataclass(frozen=True)
class TheoremSpec:
    tag: str
    family: Family
    qs: frozenset
    check: object
    domain: object
    scan_limit: int | None = None


def _all_primes(q, p):
    return True


def _residue_qs(family):
    from .rules import rule_table
    return frozenset(r.q for r in rule_table() if r.family is family)


def _poly_qs():
    from .rules import criterion_table
    return frozenset(c.q for c in criterion_table())


THEOREMS = {
    "thm1_E": TheoremSpec("thm1_E", Family.E, _residue_qs(Family.E),
                          _check_residue(Family.E), _all_primes),
    "thm2_H1": TheoremSpec("thm2_H1", Family.H1, _residue_qs(Family.H1),
                           _check_residue(Family.H1), _all_primes),
    "thm3_H2": TheoremSpec("thm3_H2", Family.H2, _residue_qs(Family.H2),
                           _check_residue(Family.H2), _all_primes),
    "thm4_poly": TheoremSpec("thm4_poly", Family.E, _poly_qs(), _check_poly,
                             lambda q, p: in_criterion_domain(p, get_criterion(q)),
                             ROOT_SCAN_BUDGET),
    "thm41": TheoremSpec("thm41", Family.E, frozenset({17}), _check_thm41,
                         lambda q, p: p > 17),
    "thm42": TheoremSpec("thm42", Family.E, frozenset({11, 19}), _check_thm42,
                         lambda q, p: p > q),
    "kaplansky": TheoremSpec("kaplansky", Family.E, frozenset({32, 64}), _check_kaplansky,
                             lambda q, p: p % 8 == 1),
    "barrucand_cohn": TheoremSpec("barrucand_cohn", Family.E, frozenset({32}),
                                  _check_barrucand_cohn, lambda q, p: p > 2, ROOT_SCAN_BUDGET),
}


def get_theorem(tag: str, q: int) -> TheoremSpec:
    try:
        spec = THEOREMS[tag]
    except KeyError:
        raise KeyError(f"unknown theorem tag {tag!r}; known: {', '.join(sorted(THEOREMS))}") from None
    if q not in spec.qs:
        raise KeyError(f"{tag} has no case q={q}; cases: {sorted(spec.qs)}")
    return spec


@dataclass
class VerificationReport:
    theorem: str
    q: int
    family: str
    prime_bound: int
    checked_count: int
    mismatches: list = field(default_factory=list)
    elapsed: float = 0.0
    table_version: str = TABLE_VERSION

    @property
    def clean(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theorem", "q", "family", "p", "kind", "predicate", "witness_found",
                         "witness"])
        for m in self.mismatches:
            writer.writerow([self.theorem, self.q, self.family, m["p"], m["kind"],
                             m["predicate"], m["witness_found"],
                             json.dumps(m["witness"], sort_keys=True)])
        return buf.getvalue()


def _check_chunk(tag: str, q: int, primes: list[int]) -> list[dict]:
    check = THEOREMS[tag].check
    out = []
    for p in primes:
        out.extend(check(q, p))
    return out


def domain_primes(tag: str, q: int, prime_bound: int) -> list[int]:
    spec = get_theorem(tag, q)
    return [p for p in primes_between(2, prime_bound) if spec.domain(q, p)]


def verify_theorem(tag: str, q: int, prime_bound: int, workers: int | None = None) -> VerificationReport:
    spec = get_theorem(tag, q)
    if spec.scan_limit is not None and prime_bound >= spec.scan_limit:
        raise BudgetExceeded(f"{tag} scans roots mod p; bound must stay below {spec.scan_limit}")
    start = time.perf_counter()
    primes = domain_primes(tag, q, prime_bound)
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(primes) >= _PARALLEL_MIN:
        size = -(-len(primes) // (workers * 4))
        chunks = [primes[i:i + size] for i in range(0, len(primes), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_check_chunk, [tag] * len(chunks), [q] * len(chunks), chunks)
            mismatches = [m for part in parts for m in part]
    else:
        mismatches = _check_chunk(tag, q, primes)
    mismatches.sort(key=lambda m: (m["p"], m["kind"]))
    return VerificationReport(tag, q, spec.family.value, prime_bound, len(primes), mismatches,
                              round(time.perf_counter() - start, 6))


def report_fingerprint(report: VerificationReport) -> str:
    """JSON of a report without the timing field, for determinism checks."""
    d = report.to_dict()
    d.pop("elapsed")
    return json.dumps(d, sort_keys=True)


RESIDUE_AND_POLY_TAGS = ("thm1_E", "thm2_H1", "thm3_H2", "thm4_poly")


def collect_findings(prime_bound: int, tags=RESIDUE_AND_POLY_TAGS, workers: int | None = None):
    """Every (tag, q, p) mismatch over all cases of the given theorem tags."""
    found = set()
    for tag in tags:
        for q in sorted(THEOREMS[tag].qs):
            for m in verify_theorem(tag, q, prime_bound, workers).mismatches:
                found.add((tag, q, m["p"]))
    return found


def load_expected_findings() -> dict:
    text = resources.files("primeforms").joinpath("data/expected_findings.json").read_text()
    return json.loads(text)


def expected_finding_set(doc: dict | None = None) -> set:
    doc = load_expected_findings() if doc is None else doc
    return {(f["theorem"], f["q"], p) for f in doc["findings"] for p in f["primes"]}


@dataclass
class ProblemOneReport:
    q_max: int
    prime_bound: int
    verdicts: list = field(default_factory=list)

    def verdict(self, q: int) -> dict:
        return next(v for v in self.verdicts if v["q"] == q)

    def to_dict(self) -> dict:
        return asdict(self)


def _compare_indefinite(q: int, primes: list[int]) -> tuple[bool, int | None]:
    h1 = {p for p in primes if represent(p, FormInstance(Family.H1, q)) is not None}
    h2 = {p for p in primes if represent(p, FormInstance(Family.H2, q)) is not None}
    diff = h1 ^ h2
    return not diff, (min(diff) if diff else None)


def explore_problem1(q_max: int, prime_bound: int) -> ProblemOneReport:
    """For each q <= q_max: do H1(q) and H2(q) contain the same primes up to the bound?"""
    if q_max > PROBLEM_Q_MAX:
        raise BudgetExceeded(f"q_max is limited to {PROBLEM_Q_MAX}")
    primes = primes_between(2, prime_bound)
    report = ProblemOneReport(q_max, prime_bound)
    for q in range(1, q_max + 1):
        equal, first = _compare_indefinite(q, primes)
        report.verdicts.append({"q": q, "equal": equal, "first_divergence": first})
    return report


def explore_problem2(q1: int, q2: int, prime_bound: int) -> dict:
    """Empirical check whether prime-equality of H1 and H2 passes from q1, q2 to q1*q2."""
    if gcd(q1, q2) != 1:
        raise ValueError(f"q1={q1} and q2={q2} are not coprime")
    primes = primes_between(2, prime_bound)
    eq1, _ = _compare_indefinite(q1, primes)
    eq2, _ = _compare_indefinite(q2, primes)
    equal, first = _compare_indefinite(q1 * q2, primes)
    return {
        "q1": q1, "q2": q2, "q": q1 * q2, "prime_bound": prime_bound,
        "q1_equal": eq1, "q2_equal": eq2, "hypothesis_met": eq1 and eq2,
        "equal": equal, "first_divergence": first,
    }


SET_RELATIONS = (
    ("P1=P4", 1, 4, "equal"),
    ("P8=P16", 8, 16, "equal"),
    ("P5<P1", 5, 1, "subset"),
    ("P10<P2", 10, 2, "subset"),
)


def set_relations(prime_bound: int) -> dict:
    """Check the relations among P_q = {odd p = a^2 + q b^2} over odd primes."""
    primes = primes_between(3, prime_bound)
    members = {q: {p for p in primes if represent_definite(p, q) is not None}
               for q in (1, 2, 4, 5, 8, 10, 16)}
    out = {}
    for name, small, big, kind in SET_RELATIONS:
        s, b = members[small], members[big]
        if kind == "equal":
            violations = sorted(s ^ b)
            strict = None
        else:
            violations = sorted(s - b)
            extra = b - s
            strict = min(extra) if extra else None
        out[name] = {"holds": not violations, "violations": violations,
                     "strictness_witness": strict}
    return out
