import json

import pytest

from fermat_periods.suites import (
    CONJECTURE1_RANGES,
    THEOREM2_TRIPLES,
    Report,
    SuiteConfig,
    VerificationCase,
    alternate_roots,
    conjecture1_cases,
    degree_multisets,
    prop3_cases,
    run_case,
    run_conjecture1_suite,
    run_prop3_suite,
    run_suite,
    run_theorem2_suite,
    theorem2_cases,
)


def strip_times(doc):
    for c in doc["cases"]:
        c.pop("wall_time")
    return doc


def test_theorem2_case_list():
    assert len(THEOREM2_TRIPLES) == 23 == len(theorem2_cases(SuiteConfig()))
    assert len(theorem2_cases(SuiteConfig(n=2))) == 10
    case = theorem2_cases(SuiteConfig(n=2, d=5))[0]
    assert case.params == {"n": 2, "d": 5, "m": -1} and case.expected == 4
    run_case(case)
    assert case.computed.rank == 4 and case.status == "pass"


def test_conjecture1_case_list():
    assert degree_multisets(2, 4) == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    cases = conjecture1_cases(SuiteConfig(n=2, d=4))
    assert len(cases) == 6 and cases[0].expected == 1
    full = conjecture1_cases(SuiteConfig())
    for n, d in CONJECTURE1_RANGES:
        k = sum(1 for c in full if (c.params["n"], c.params["d"]) == (n, d))
        if n == 2 and d <= 8 or n > 2:
            assert k == len(degree_multisets(n, d))
        else:
            assert k >= 3
    assert len(conjecture1_cases(SuiteConfig(n=2, d=10, sample_size=0))) == 45
    case = conjecture1_cases(SuiteConfig(n=4, d=3))[0]
    assert case.params["degrees"] == [1, 1, 1] and case.expected == 1


def test_alternate_roots_are_valid_and_distinct():
    for d in range(3, 9):
        for degrees in degree_multisets(2, d):
            alt = alternate_roots(degrees, d)
            for dk, B in zip(degrees, alt):
                assert len(set(B)) == dk and all(e % 2 == 1 and 1 <= e < 2 * d for e in B)
            assert alt != tuple(tuple(1 + 2 * a for a in range(dk)) for dk in degrees) or all(
                dk == d for dk in degrees
            )


def test_prop3_case_list():
    cases = prop3_cases(SuiteConfig())
    labels = {(c.params["n"], c.params["d"]) for c in cases}
    assert (2, 3) not in labels and (2, 4) in labels and (4, 3) in labels
    assert all(d * n >= 2 * n + 4 for n, d in labels)
    assert next(c for c in cases if c.params == {"n": 10, "d": 3}).expected == 20


def test_conjecture1_small_and_root_choice():
    report = run_conjecture1_suite(SuiteConfig(n=2, d=5))
    assert report.ok and len(report.cases) == 10
    first = report.cases[0]
    assert first.detail["root_choice_independent"] is True
    assert first.detail["alt_roots_rank"] == first.computed.rank


def test_prop3_records_row_generation():
    report = run_prop3_suite(SuiteConfig(n=6, d=4))
    (case,) = report.cases
    assert case.status == "pass" and case.expected == 19
    rg = case.detail["row_generation"]
    assert rg["rows_checked"] > 0 and rg["rows_failed"] == 0


def test_reports_are_deterministic_and_parallel_order_is_canonical():
    cfg = SuiteConfig(n=4)
    a = strip_times(run_theorem2_suite(cfg).to_json())
    b = strip_times(run_theorem2_suite(cfg).to_json())
    c = strip_times(run_theorem2_suite(SuiteConfig(n=4, jobs=2)).to_json())
    assert a == b == c
    json.dumps(a)
    assert a["summary"] == {"total": 5, "pass": 5, "fail": 0, "error": 0, "ok": True}


def test_errors_are_recorded_and_suite_continues():
    bad = VerificationCase("theorem2", {"n": 2, "d": 5, "m": 9}, 0)
    good = theorem2_cases(SuiteConfig(n=2, d=5))[0]
    report = run_suite("theorem2", [bad, good], SuiteConfig())
    assert [c.status for c in report.cases] == ["error", "pass"]
    assert "m must lie" in report.cases[0].error
    assert report.exit_code() == 1
    assert "1 error" in report.to_text()
    assert report.to_tsv().count("\n") == 3


def test_status_requires_certification():
    case = theorem2_cases(SuiteConfig(n=2, d=6))[0]
    run_case(case, method="modular", prime_count=1)
    assert case.computed.certified and case.status == "pass"


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(prime_count=0)
    with pytest.raises(ValueError):
        SuiteConfig(method="fast")
    with pytest.raises(ValueError):
        SuiteConfig(jobs=0)
    assert isinstance(Report("x", []).to_json()["summary"]["ok"], bool)
