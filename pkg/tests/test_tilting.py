"""Tests for tilting strategies, b-coefficients and the necessary checks."""

import unittest
from pathlib import Path
from tempfile import TemporaryDirectory
from typing import Optional

import pytest

from tiltver.charring import Character, weyl_character
from tiltver.config import CaseConfig
from tiltver.datapacks import builtin_data_path
from tiltver.engine import build_engine
from tiltver.errors import MalformedOverride, TiltingDataMissing
from tiltver.linkage import AlcoveContext
from tiltver.rootdata import LeviSubset, Weight, root_datum_from_label
from tiltver.tilting import (
    StrategyRegistry,
    TiltingStrategy,
    b_coefficients,
    load_tilting_table,
    sandwich_pinch,
    tilting_char,
    tmc_necessary_checks,
)
from tiltver.tilting.conjecture import (
    evaluate_qhat_checks,
    levi_a_coefficients,
    levi_b_coefficients,
    levi_tilting_char,
)

A1 = root_datum_from_label("A1")
A2 = root_datum_from_label("A2")


def _engine(label: str, p: int, tables: Optional[list[Path]] = None):
    return build_engine(CaseConfig(type_label=label, p=p, tilting_tables=tables or []))


class FixedStrategy(TiltingStrategy):
    def __init__(self, name: str, answer: Optional[dict[Weight, int]] = None) -> None:
        self.name = name
        self.answer = answer

    @property
    def strategy_id(self) -> str:
        return self.name

    @property
    def provenance(self) -> str:
        return "test"

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        return self.answer


def test_registry_keeps_registration_order():
    registry = StrategyRegistry()
    registry.register(FixedStrategy("first"))
    registry.register(FixedStrategy("second", {(0,): 1}))
    assert [s.strategy_id for s in registry] == ["first", "second"]
    assert registry.list_strategies()[1] == {"strategy_id": "second", "provenance": "test", "independent": True}

    registry.register(FixedStrategy("first", {(1,): 1}))
    assert len(registry) == 2
    assert registry.get_strategy("first").answer == {(1,): 1}
    assert registry.unregister("second")
    assert not registry.unregister("second")
    assert registry.get_strategy("second") is None


def test_default_chain_order():
    engine = _engine("A1", 5)
    assert [s["strategy_id"] for s in engine.registry.list_strategies()] == [
        "ingested-table",
        "steinberg",
        "lowest-alcove",
        "jsf-simple",
        "sl2-closed-form",
        "sandwich-pinch",
    ]
    assert not engine.registry.get_strategy("sandwich-pinch").independent


def test_sl2_strategies():
    engine = _engine("A1", 5)
    assert engine.tilting.resolve((4,)).strategy_id == "steinberg"
    assert engine.tilting.resolve((2,)).strategy_id == "lowest-alcove"
    resolution = engine.tilting.resolve((6,))
    assert resolution.strategy_id == "sl2-closed-form"
    assert resolution.expansion == {(6,): 1, (2,): 1}
    assert resolution.provenance == "closed-form"


def test_tilting_character_from_closed_form():
    engine = _engine("A1", 5)
    assert tilting_char((6,), engine) == weyl_character((6,), A1) + weyl_character((2,), A1)
    assert tilting_char((3,), engine) == weyl_character((3,), A1)


def test_missing_tilting_data_names_the_weight():
    engine = _engine("A1", 5)
    with pytest.raises(TiltingDataMissing) as caught:
        engine.tilting.resolve((10,))
    assert caught.value.weight == (10,)
    assert "T=10" in caught.value.hint
    with pytest.raises(TiltingDataMissing):
        engine.tilting.resolve((-1,))


@pytest.mark.parametrize("n", range(5))
def test_sl2_b_coefficients(n):
    b, resolution = b_coefficients((n,), _engine("A1", 5))
    assert b == {(n,): 1}
    assert resolution.independent


def test_sl2_pinch():
    engine = _engine("A1", 3)
    result = sandwich_pinch((1,), engine)
    assert result.pinched
    assert result.index_set == {(1,)}
    assert result.character == engine.g1t.qhat_char((1,))


def test_necessary_checks_pass_for_sl2():
    outcome = tmc_necessary_checks((1,), _engine("A1", 3))
    assert outcome.passed
    assert outcome.a == {(1,): 1}
    assert [c.name for c in outcome.checks] == [
        "weyl-invariant",
        "nonnegative-weyl-expansion",
        "self-dual",
        "divisible-by-steinberg",
        "linkage-support",
        "top-coefficient",
    ]
    self_dual = next(c for c in outcome.checks if c.name == "self-dual")
    assert "engine error" in self_dual.detail


def test_fabricated_hull_fails_divisibility():
    fake = weyl_character((3,), A1)
    outcome = evaluate_qhat_checks((1,), fake, fake, weyl_character((2,), A1), {(1,)})
    assert not outcome.passed
    assert [c.name for c in outcome.failures] == ["divisible-by-steinberg"]
    assert outcome.a is None


def test_fabricated_hull_fails_invariance():
    fake = Character.monomial(A2, (1, 0))
    outcome = evaluate_qhat_checks((0, 0), fake, fake, weyl_character((1, 1), A2), {(0, 0)})
    failed = {c.name for c in outcome.failures}
    assert {"weyl-invariant", "nonnegative-weyl-expansion"} <= failed


def test_fabricated_hull_with_wrong_support():
    qhat = weyl_character((2,), A1) * weyl_character((3,), A1)
    outcome = evaluate_qhat_checks((1,), qhat, qhat, weyl_character((2,), A1), {(1,)})
    assert [c.name for c in outcome.failures] == ["linkage-support"]
    assert outcome.a == {(3,): 1, (1,): 1}


def test_levi_tilting_closed_form():
    levi = LeviSubset(A2, (0,))
    char = levi_tilting_char((4, 0), levi, 3)
    assert char == weyl_character((4, 0), levi.datum) + weyl_character((0, 2), levi.datum)
    assert levi_tilting_char((1, 0), LeviSubset(A2, ()), 3) == Character.monomial(A2, (1, 0))
    with pytest.raises(TiltingDataMissing):
        levi_tilting_char((5, 0), levi, 3)


def test_levi_coefficients_agree_for_sl2_levi():
    engine = _engine("A2", 3)
    levi = LeviSubset(engine.datum, (0,))
    for weight in [(0, 0), (1, 0), (2, 1)]:
        assert levi_b_coefficients(weight, levi, 3) == {weight: 1}
        assert levi_a_coefficients(weight, levi, engine) == {weight: 1}


class TiltingTableTest(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = TemporaryDirectory()
        self.root = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def _write(self, name: str, text: str) -> Path:
        path = self.root / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_builtin_a2_table_parses(self) -> None:
        path = builtin_data_path("tilting", "a2.txt")
        table = load_tilting_table(path, AlcoveContext(A2, 2))
        self.assertEqual(len(table), 4)
        self.assertEqual(table.get((2, 2)), {(2, 2): 1, (3, 0): 1, (0, 3): 1, (0, 0): 1})
        self.assertEqual(len(load_tilting_table(path, AlcoveContext(A2, 3))), 0)

    def test_ingested_rows_are_used(self) -> None:
        engine = _engine("A2", 2, [builtin_data_path("tilting", "a2.txt")])
        resolution = engine.tilting.resolve((2, 1))
        self.assertEqual(resolution.strategy_id, "ingested-table")
        self.assertEqual(resolution.provenance, "ingested")
        self.assertEqual(resolution.expansion, {(2, 1): 1, (0, 2): 1, (1, 0): 1})

    def test_valid_sl2_row(self) -> None:
        path = self._write("sl2.txt", "A1 3 : T=3 : chi=3 mult=1\nA1 3 : T=3 : chi=1 mult=1\n")
        engine = _engine("A1", 3, [path])
        self.assertEqual(engine.tilting.resolve((3,)).strategy_id, "ingested-table")

    def test_invalid_rows_fall_through(self) -> None:
        path = self._write(
            "bad.txt",
            "A1 3 : T=3 : chi=3 mult=2\nA1 3 : T=4 : chi=4 mult=1\nA1 3 : T=4 : chi=1 mult=1\n",
        )
        engine = _engine("A1", 3, [path])
        self.assertEqual(engine.tilting.resolve((3,)).strategy_id, "sl2-closed-form")
        self.assertEqual(engine.tilting.resolve((4,)).strategy_id, "sl2-closed-form")
        rejected = engine.registry.get_strategy("ingested-table").rejected
        self.assertEqual(set(rejected), {(3,), (4,)})

    def test_malformed_line(self) -> None:
        path = self._write("broken.txt", "A1 3 : T=3 chi=3 mult=1\n")
        with self.assertRaises(MalformedOverride):
            load_tilting_table(path, AlcoveContext(A1, 3))
