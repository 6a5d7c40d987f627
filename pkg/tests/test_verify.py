"""Tests for the verification sweeps and report serialization."""

import json

import pytest

from tiltver.config import CaseConfig
from tiltver.datapacks import builtin_data_path
from tiltver.engine import build_engine
from tiltver.errors import ConfigurationError
from tiltver.verify import (
    SweepRunner,
    Verdict,
    char_report,
    emit_report,
    ext_check,
    levi_consistency,
    minimal_cx_analysis,
    parse_report,
    ph2_region_check,
    tmc_check,
)
from tiltver.verify.report import CaseEcho, Comparison, LeviReport, TmcReport, WeightEntry

A2_TABLE = builtin_data_path("tilting", "a2.txt")


def _cfg(label: str, p: int, **kwargs) -> CaseConfig:
    return CaseConfig(type_label=label, p=p, **kwargs)


def test_runner_captures_failures():
    def boom():
        raise RuntimeError("no data")

    results = SweepRunner("test").run_all([("ok", lambda: 1), ("bad", boom)])
    assert results[0].success and results[0].value == 1
    assert not results[1].success
    assert results[1].error == "RuntimeError: no data"


def test_sl2_sweep_is_verified():
    report = tmc_check(_cfg("A1", 5))
    assert [entry.weight for entry in report.entries] == ["0", "1", "2", "3", "4"]
    assert all(entry.verdict == Verdict.VERIFIED for entry in report.entries)
    assert report.summary.counts == {"VERIFIED": 5}
    assert report.summary.coxeter_number == 2
    assert report.summary.generic_bound_covered
    for entry in report.entries:
        assert entry.a == {entry.weight: 1}
        assert entry.b == {entry.weight: 1}


def test_a2_with_tilting_table_is_verified():
    report = tmc_check(_cfg("A2", 2, tilting_tables=[A2_TABLE]))
    assert report.verdicts() == {w: Verdict.VERIFIED for w in ["0,0", "1,0", "0,1", "1,1"]}
    assert report.summary.discrepancies == 0


def test_a2_without_table_is_only_consistent():
    report = tmc_check(_cfg("A2", 2))
    verdicts = report.verdicts()
    assert verdicts["0,0"] == Verdict.VERIFIED
    for weight in ["1,0", "0,1", "1,1"]:
        assert verdicts[weight] == Verdict.CONSISTENT


def test_g2_at_two_issues_no_verified_verdict():
    report = tmc_check(_cfg("G2", 2))
    assert all(entry.verdict != Verdict.VERIFIED for entry in report.entries)
    assert any("G2 at p = 2" in note for note in report.notes)


SETTLED = {Verdict.VERIFIED, Verdict.CONSISTENT}


def _assert_settled(report):
    unsettled = {entry.weight: entry.diagnostics for entry in report.entries if entry.verdict not in SETTLED}
    assert unsettled == {}


@pytest.mark.parametrize("label, p", [("B2", 2), ("A2", 3)])
def test_small_sweeps_are_settled(label, p):
    report = tmc_check(_cfg(label, p))
    assert report.verdicts()["0,0"] == Verdict.VERIFIED
    _assert_settled(report)


@pytest.mark.slow
@pytest.mark.parametrize(
    "label, p", [("A2", 5), ("B2", 3), ("B2", 5), ("G2", 3), ("G2", 5), ("G2", 7)]
)
def test_rank2_sweeps_are_settled(label, p):
    report = tmc_check(_cfg(label, p))
    assert report.verdicts()["0,0"] == Verdict.VERIFIED
    _assert_settled(report)


@pytest.mark.parametrize("label, p", [("G2", 3), ("G2", 7), ("B2", 5)])
def test_steinberg_weight_needs_only_its_own_baby_verma(label, p):
    report = tmc_check(_cfg(label, p, weights=[(0, 0)]))
    (entry,) = report.entries
    assert entry.verdict == Verdict.VERIFIED
    assert entry.a == {"0,0": 1}
    assert entry.b_strategy == "steinberg"


def test_weight_subset_sweep():
    report = tmc_check(_cfg("A1", 5, weights=[(3,), (1,)]))
    assert [entry.weight for entry in report.entries] == ["1", "3"]


def test_json_report_is_stable_and_parses_back():
    cfg = _cfg("A1", 3)
    report = tmc_check(cfg)
    text = emit_report(report, "json")
    assert text == emit_report(tmc_check(cfg), "json")
    assert parse_report(text) == report
    assert json.loads(text)["kind"] == "tmc"


def test_empty_report_echoes_config():
    report = TmcReport(config=CaseEcho(type_label="A1", p=2))
    document = json.loads(emit_report(report, "json"))
    assert document["entries"] == []
    assert document["config"]["type_label"] == "A1"
    assert emit_report(report, "text").startswith("tiltver tmc: A1 p=2\n")
    with pytest.raises(ValueError):
        emit_report(report, "xml")


def test_levi_consistency_for_sl2_levi():
    report = levi_consistency(_cfg("A2", 3), (0,))
    assert report.levi == [1]
    assert report.levi_tmc_verified
    assert report.violations == 0
    assert not any(row.error for row in report.rows)


def test_empty_levi_compares_only_the_top_weight():
    report = levi_consistency(_cfg("A2", 2), ())
    assert {row.mu for row in report.rows} == {"0,0", "1,0", "0,1", "1,1"}
    assert all(row.weight == row.mu and row.equal for row in report.rows)


def test_levi_must_be_proper():
    with pytest.raises(ConfigurationError):
        levi_consistency(_cfg("A2", 2), (0, 1))


def test_minimal_counterexample_findings():
    echo = CaseEcho(type_label="A2", p=3)
    report = TmcReport(
        config=echo,
        entries=[
            WeightEntry(
                weight="2,0",
                qhat_weight="2,0",
                verdict=Verdict.REFUTED_NECESSARY,
                comparisons=[Comparison(mu="0,1", a=1, b=0, equal=False)],
            ),
            WeightEntry(
                weight="0,1",
                qhat_weight="1,2",
                verdict=Verdict.REFUTED_NECESSARY,
                comparisons=[Comparison(mu="1,1", a=0, b=1, equal=False)],
            ),
        ],
    )
    levi = LeviReport(config=echo, levi=[1], levi_tmc_verified=True)
    result = minimal_cx_analysis(report, [levi])
    assert result.discrepancies == 2
    assert [(f.weight, f.issue) for f in result.findings] == [
        ("2,0", "levi-reducible"),
        ("0,1", "alpha0-nonpositive"),
    ]


def test_clean_sweep_has_no_findings():
    result = minimal_cx_analysis(tmc_check(_cfg("A1", 3)))
    assert result.discrepancies == 0
    assert result.findings == []


def test_ph2_region_for_a2():
    report = ph2_region_check(_cfg("A2", 3))
    assert report.expected_p == 3
    assert report.region_bound == 3
    weights = {row.weight for row in report.rows}
    assert len(weights) == 8
    assert "2,2" not in weights
    assert report.violations == 0
    assert report.notes == []


@pytest.mark.slow
def test_ph2_region_for_b2_at_five():
    report = ph2_region_check(_cfg("B2", 5))
    assert report.expected_p == 5
    assert report.region_bound == 10
    assert report.notes == []
    assert report.violations == 0
    assert all(row.verdict in SETTLED for row in report.rows)
    assert all(row.alpha0_pairing <= 10 for row in report.rows)


def test_ph2_warns_off_its_prime():
    report = ph2_region_check(_cfg("A1", 3, weights=[(0,)]))
    assert report.expected_p == 1
    assert report.notes


def test_ext_check_report():
    report = ext_check(_cfg("B2", 3))
    assert {c.gamma for c in report.candidates} == {"0,0", "1,0", "0,1"}
    assert report.complete_reducibility
    assert parse_report(emit_report(report, "json")) == report


def test_char_report_kinds():
    cfg = _cfg("A2", 2)
    engine = build_engine(cfg)
    assert char_report(cfg, (1, 1), "weyl", engine).dimension == 8
    assert char_report(cfg, (1, 1), "simple", engine).weyl_expansion == {"1,1": 1}
    assert char_report(cfg, (0, 0), "babyverma", engine).weyl_expansion is None
    tilting = char_report(cfg, (1, 1), "tilting", engine)
    assert tilting.provenance == "base-case (steinberg)"
    with pytest.raises(ConfigurationError):
        char_report(cfg, (1, 1), "verma", engine)


LEVI_CASES = [("B2", 2), ("B2", 3), ("B2", 5), ("G2", 3), pytest.param("G2", 5, marks=pytest.mark.slow)]


@pytest.mark.parametrize("levi", [(), (0,), (1,)])
@pytest.mark.parametrize("label, p", LEVI_CASES)
def test_levi_consistency_for_every_proper_subset(label, p, levi):
    report = levi_consistency(_cfg(label, p), levi)
    assert not any(row.error for row in report.rows)
    assert report.violations == 0
