from stonevn.report import NaturalIsoReport, Report
from stonevn.verify import Bounds, CRITERIA, full_pipeline_verify


def test_report_merge_and_summary():
    a, b = Report("a"), Report("b")
    a.check(True)
    b.check(False, lambda: "boom")
    b.skipped = 2
    a.merge(b)
    assert (a.checked, a.failed, a.skipped) == (2, 1, 2)
    assert a.failures == ["b: boom"] and not a.passed
    assert a.summary() == "FAIL a: 2 checks, 1 failed, 2 skipped"


def test_failure_list_is_capped():
    r = Report("r")
    for _ in range(100):
        r.check(False, "x")
    assert r.failed == 100 and len(r.failures) == 25


def test_natural_iso_report():
    r = NaturalIsoReport("n")
    r.component("X", {"a": "b"}, True)
    r.square(True, "")
    d = r.to_dict()
    assert d["components"] == {"X": {"a": "b"}} and d["squares"] == 1 and d["passed"]


def test_empty_corpus_is_a_vacuous_pass():
    result = full_pipeline_verify(0, Bounds.empty(), only=[k for k in CRITERIA if k != 14])
    assert result.passed
    assert all(any("vacuous" in w for w in r.warnings) for r in result.reports)


def test_broken_join_fails_the_join_criteria():
    quick = Bounds().quick()
    broken = full_pipeline_verify(0, quick, mutations=("join",), only=[1, 4, 5, 6, 11])
    verdicts = {r.name.split()[0]: r.passed for r in broken.reports}
    assert verdicts == {"1": True, "4": True, "5": False, "6": False, "11": False}
    healthy = full_pipeline_verify(0, quick, only=[5, 6, 11])
    assert healthy.passed


def test_seeds_are_reproducible():
    a = full_pipeline_verify(7, Bounds().quick(), only=[1, 13]).to_dict()
    b = full_pipeline_verify(7, Bounds().quick(), only=[1, 13]).to_dict()
    assert a == b
