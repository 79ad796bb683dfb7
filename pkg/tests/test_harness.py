import csv
import io
import json

import pytest

from primeforms.errors import BudgetExceeded
from primeforms.harness import (
    THEOREMS,
    WORKERS_ENV,
    collect_findings,
    default_workers,
    expected_finding_set,
    explore_problem1,
    explore_problem2,
    get_theorem,
    load_expected_findings,
    report_fingerprint,
    set_relations,
    verify_theorem,
)


def test_clean_report_e7():
    r = verify_theorem("thm1_E", 7, 10**4)
    assert r.clean and r.checked_count == 1229
    d = json.loads(r.to_json())
    assert set(d) == {"theorem", "q", "family", "prime_bound", "checked_count", "mismatches",
                      "elapsed", "table_version"}
    assert d["family"] == "E" and d["table_version"] == "1"


def test_h2_8_names_seven():
    r = verify_theorem("thm3_H2", 8, 1000)
    assert [m["p"] for m in r.mismatches] == [7]
    m = r.mismatches[0]
    assert m["predicate"] is True and m["witness_found"] is False and m["witness"] is None


def test_e13_names_thirteen():
    r = verify_theorem("thm1_E", 13, 1000)
    assert [m["p"] for m in r.mismatches] == [13]
    assert r.mismatches[0]["witness"] == {"a": 0, "b": 1, "multiplier": 1}


def test_csv_is_projection_of_json():
    r = verify_theorem("thm2_H1", 7, 200)
    rows = list(csv.DictReader(io.StringIO(r.to_csv())))
    assert [int(row["p"]) for row in rows] == [m["p"] for m in r.mismatches]
    assert all(row["theorem"] == "thm2_H1" for row in rows)


def test_unknown_tag_and_case():
    with pytest.raises(KeyError):
        get_theorem("thm9", 7)
    with pytest.raises(KeyError):
        verify_theorem("thm1_E", 11, 100)


def test_scan_budget():
    with pytest.raises(BudgetExceeded):
        verify_theorem("thm4_poly", 27, 10**6)


def test_determinism_and_parallel():
    a = verify_theorem("thm3_H2", 7, 30000, workers=1)
    b = verify_theorem("thm3_H2", 7, 30000, workers=1)
    c = verify_theorem("thm3_H2", 7, 30000, workers=2)
    assert report_fingerprint(a) == report_fingerprint(b) == report_fingerprint(c)
    assert not a.clean


def test_workers_env(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert default_workers() == 3
    monkeypatch.delenv(WORKERS_ENV)
    assert default_workers() >= 1


def test_fixture_shape():
    doc = load_expected_findings()
    assert doc["prime_bound"] == 10**4 and doc["table_version"] == "1"
    for f in doc["findings"]:
        assert f["theorem"] in THEOREMS and f["primes"] == sorted(f["primes"])


def test_findings_match_shipped_fixture():
    # the fixture was produced by an independent brute-force script
    assert collect_findings(10**4) == expected_finding_set()


def test_findings_include_known_errata():
    found = expected_finding_set()
    for item in [("thm3_H2", 8, 7), ("thm1_E", 13, 13), ("thm4_poly", 23, 3), ("thm4_poly", 23, 19),
                 ("thm4_poly", 31, 3), ("thm4_poly", 37, 3), ("thm2_H1", 7, 5), ("thm3_H2", 7, 11)]:
        assert item in found


@pytest.mark.parametrize("tag,q,bound", [("thm41", 17, 20000), ("thm42", 11, 10**4),
                                         ("thm42", 19, 10**4), ("kaplansky", 64, 20000),
                                         ("barrucand_cohn", 32, 10**4)])
def test_additional_tags_clean(tag, q, bound):
    assert verify_theorem(tag, q, bound).clean


def test_problem1_small():
    r = explore_problem1(11, 2000)
    assert [v["q"] for v in r.verdicts if v["equal"]] == [1, 2, 5, 10]
    assert r.verdict(3)["first_divergence"] == 2
    with pytest.raises(BudgetExceeded):
        explore_problem1(51, 100)


def test_problem2():
    r = explore_problem2(2, 5, 5000)
    assert r["hypothesis_met"] and r["equal"] and r["q"] == 10
    r = explore_problem2(2, 3, 5000)
    assert not r["hypothesis_met"] and not r["equal"] and r["first_divergence"] is not None
    with pytest.raises(ValueError):
        explore_problem2(2, 4, 100)


def test_set_relations():
    rel = set_relations(10**4)
    assert all(v["holds"] for v in rel.values())
    assert rel["P5<P1"]["strictness_witness"] == 13
    assert rel["P10<P2"]["strictness_witness"] == 3
