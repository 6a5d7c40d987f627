"""Tests for Ext^1 candidate weights and the bound on <gamma, alpha_0^vee>."""

import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

import pytest

from tiltver.config import DEFAULT_DATA_ROOT
from tiltver.errors import ConfigurationError
from tiltver.extbounds import (
    Resolution,
    SimplicityConclusion,
    _resolve,
    and_bound,
    bnp_bound,
    bound_hypotheses_hold,
    bound_region,
    bound_value,
    dominance_leq,
    ext_candidates,
    combined_inequality_holds,
    ext_report,
    load_ext_facts,
    prop_bound_check,
    rank2_ext_report,
    simplicity_conclusion,
)
from tiltver.linkage import AlcoveContext
from tiltver.rootdata import root_datum_from_label

A1 = root_datum_from_label("A1")
B2 = root_datum_from_label("B2")
G2 = root_datum_from_label("G2")


def test_dominance_order():
    assert dominance_leq((0,), (2,), A1)
    assert not dominance_leq((0,), (1,), A1)
    assert dominance_leq((0, 0), (0, 2), B2)


def test_inequality_right_hand_sides():
    ctx = AlcoveContext(A1, 3)
    assert and_bound((0,), (0,), 0, A1) == (2,)
    assert bnp_bound((0,), (0,), ctx) == (4,)
    assert ext_candidates((0,), (0,), ctx) == {(0,)}


def test_bound_values():
    assert bound_value(A1) == 1
    assert bound_value(B2) == 2
    assert bound_value(G2) == 4


def test_prop_bound_check_g2():
    ctx = AlcoveContext(G2, 7)
    assert prop_bound_check((2, 0), ctx)
    assert prop_bound_check((0, 1), ctx)
    assert not prop_bound_check((0, 2), ctx)


@pytest.mark.parametrize(
    "datum, expected",
    [
        (B2, {(0, 0), (1, 0), (0, 1), (0, 2)}),
        (G2, {(0, 0), (1, 0), (2, 0), (0, 1)}),
        (A1, {(0,), (1,)}),
    ],
)
def test_bound_region(datum, expected):
    assert set(bound_region(AlcoveContext(datum, 5))) == expected


def test_bound_hypotheses():
    assert not bound_hypotheses_hold(B2, 2)
    assert bound_hypotheses_hold(B2, 3)
    assert not bound_hypotheses_hold(G2, 3)
    assert bound_hypotheses_hold(G2, 5)
    assert bound_hypotheses_hold(root_datum_from_label("A2"), 2)


def test_b2_p3_bound_region_is_0_w1_w2_2w2_and_candidates_avoid_2w2():
    report = rank2_ext_report("B2", 3)
    assert set(report.region) == {(0, 0), (1, 0), (0, 1), (0, 2)}
    assert set(report.candidate_weights) == {(0, 0), (1, 0), (0, 1)}
    assert not report.bound_unsupported
    assert report.bound_violations == []
    assert report.pairs == 81
    assert (0, 2) in report.region
    assert report.complete_reducibility


@pytest.mark.slow
def test_g2_bound_filtered_candidates():
    region = {(0, 0), (1, 0), (0, 1), (2, 0)}
    union = set()
    for p in (3, 5, 7):
        report = rank2_ext_report("G2", p)
        assert set(report.region) == region
        kept = {c.gamma for c in report.candidates if c.bound_ok}
        assert kept <= region
        if p > 3:
            assert report.bound_violations == []
        union |= kept
    assert union == region


@pytest.mark.parametrize("label, p", [("A2", 3), ("B2", 3), ("B2", 5), ("G2", 5)])
def test_combined_inequality_holds_for_every_witnessed_candidate(label, p):
    report = ext_report(AlcoveContext(root_datum_from_label(label), p))
    witnessed = [c for c in report.candidates if c.witness is not None]
    assert witnessed
    assert all(c.combined_ok for c in witnessed)


def test_combined_inequality_values():
    ctx = AlcoveContext(B2, 3)
    # 2p(h - 1) - <2 rho - alpha, alpha_0^vee> is 18 - 4 for alpha_1 and 18 - 6 for alpha_2
    assert combined_inequality_holds((1, 0), 0, ctx)
    assert combined_inequality_holds((0, 2), 1, ctx)
    assert not combined_inequality_holds((1, 1), 1, ctx)


def test_small_prime_notes():
    report = ext_report(AlcoveContext(G2, 2))
    assert report.bound_unsupported
    assert any("G2 at p = 2" in note for note in report.notes)
    covered = ext_report(AlcoveContext(root_datum_from_label("A2"), 5))
    assert any("nothing to check" in note for note in covered.notes)


def test_rank2_report_rejects_other_ranks():
    with pytest.raises(ConfigurationError):
        rank2_ext_report("A1", 3)


def test_candidate_resolution():
    ctx = AlcoveContext(G2, 7)
    facts = load_ext_facts(DEFAULT_DATA_ROOT / "ext_facts.yaml")
    assert _resolve((1, 0), ctx, None) == Resolution.FORCED
    assert _resolve((0, 1), ctx, None) == Resolution.JSF_SIMPLE
    assert _resolve((2, 0), ctx, None) == Resolution.NOT_SIMPLE
    assert _resolve((2, 0), ctx, facts[("G2", 7)]) == Resolution.FACT
    assert simplicity_conclusion((1, 0), ctx) == SimplicityConclusion.FORCED_SIMPLE_TILTING
    assert simplicity_conclusion((2, 0), ctx) == SimplicityConclusion.NEEDS_DATA


class ExtFactsTest(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = TemporaryDirectory()
        self.root = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_packaged_facts(self) -> None:
        facts = load_ext_facts(DEFAULT_DATA_ROOT / "ext_facts.yaml")
        self.assertEqual(facts[("B2", 2)].modules, frozenset({(0, 0), (0, 1)}))
        self.assertEqual(facts[("B2", 2)].source, "Sin94 p.1019")
        self.assertEqual(facts[("G2", 3)].modules, frozenset({(0, 0), (2, 0)}))
        self.assertEqual(facts[("G2", 3)].source, "Sin94 p.1022")
        self.assertEqual(facts[("G2", 7)].source, "Lin Section 4.2 Fig. 3")

    def test_missing_file_gives_no_facts(self) -> None:
        self.assertEqual(load_ext_facts(self.root / "absent.yaml"), {})

    def test_empty_document(self) -> None:
        path = self.root / "empty.yaml"
        path.write_text("# nothing here\n", encoding="utf-8")
        self.assertEqual(load_ext_facts(path), {})

    def test_malformed_entry(self) -> None:
        path = self.root / "bad.yaml"
        path.write_text("facts:\n  - type: B2\n    modules: ['0,0']\n", encoding="utf-8")
        with self.assertRaises(ConfigurationError):
            load_ext_facts(path)
