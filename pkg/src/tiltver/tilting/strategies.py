"""Concrete tilting-character strategies, tried in the order of :func:`default_strategies`."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from ..charring import expand_weyl_basis, from_weyl_expansion
from ..errors import TiltverError
from ..linkage import in_lowest_alcove_closure, strong_linkage_down
from ..logging_config import get_logger
from ..rootdata import Weight, format_weight, sub
from ..simples import jantzen_sum_expansion
from .base import TiltingStrategy
from .registry import StrategyRegistry

if TYPE_CHECKING:
    from ..engine import CaseEngine

logger = get_logger("tiltver.engine")


class IngestedTableStrategy(TiltingStrategy):
    """Rows of a tilting table, each validated before first use."""

    def __init__(self, engine: "CaseEngine") -> None:
        self.engine = engine
        self.table = engine.tilting_table
        self.rejected: dict[Weight, str] = {}
        self._validated: set[Weight] = set()

    @property
    def strategy_id(self) -> str:
        return "ingested-table"

    @property
    def provenance(self) -> str:
        return "ingested"

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        row = self.table.get(weight)
        if row is None:
            return None
        if weight not in self._validated:
            problem = self.validate(weight, row)
            if problem is not None:
                logger.warning(f"Dropping tilting row T({format_weight(weight)}): {problem}")
                self.rejected[weight] = problem
                self.table.discard(weight)
                return None
            self._validated.add(weight)
        return row

    def validate(self, weight: Weight, row: dict[Weight, int]) -> Optional[str]:
        """Return a description of the first violated requirement, or None."""
        engine = self.engine
        if row.get(weight) != 1:
            return f"coefficient of chi({format_weight(weight)}) must be 1"
        if any(m < 0 for m in row.values()):
            return "negative Weyl-character multiplicity"
        linked = strong_linkage_down(weight, engine.ctx)
        outside = [mu for mu in row if mu not in linked]
        if outside:
            return f"chi({format_weight(outside[0])}) is not strongly linked below the top weight"

        lam = sub(weight, engine.steinberg_weight)
        if engine.datum.is_dominant(lam) and engine.datum.is_restricted(lam, engine.p):
            tilting = from_weyl_expansion(row, engine.datum)
            lower = engine.g1t.qhat_char(engine.g1t.qhat_weight(lam))
            upper = engine.steinberg_char * engine.simples.restricted_simple_char(lam)
            if not (tilting - lower).is_nonnegative():
                return "character does not contain the injective hull character"
            if not (upper - tilting).is_nonnegative():
                return "character exceeds ch St * ch L"
        return None


class SteinbergStrategy(TiltingStrategy):
    def __init__(self, engine: "CaseEngine") -> None:
        self.engine = engine

    @property
    def strategy_id(self) -> str:
        return "steinberg"

    @property
    def provenance(self) -> str:
        return "base-case"

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        if weight == self.engine.steinberg_weight:
            return {weight: 1}
        return None


class LowestAlcoveStrategy(TiltingStrategy):
    def __init__(self, engine: "CaseEngine") -> None:
        self.engine = engine

    @property
    def strategy_id(self) -> str:
        return "lowest-alcove"

    @property
    def provenance(self) -> str:
        return "base-case"

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        if in_lowest_alcove_closure(weight, self.engine.ctx):
            return {weight: 1}
        return None


class JantzenSimpleStrategy(TiltingStrategy):
    """A vanishing sum formula makes nabla(nu) simple, hence tilting."""

    def __init__(self, engine: "CaseEngine") -> None:
        self.engine = engine

    @property
    def strategy_id(self) -> str:
        return "jsf-simple"

    @property
    def provenance(self) -> str:
        return "base-case"

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        if not jantzen_sum_expansion(weight, self.engine.ctx):
            return {weight: 1}
        return None


class RankOneClosedFormStrategy(TiltingStrategy):
    """SL2: T(n) = chi(n) + chi(2p - 2 - n) for p - 1 < n <= 2p - 2."""

    def __init__(self, engine: "CaseEngine") -> None:
        self.engine = engine

    @property
    def strategy_id(self) -> str:
        return "sl2-closed-form"

    @property
    def provenance(self) -> str:
        return "closed-form"

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        if self.engine.datum.label != "A1":
            return None
        p = self.engine.p
        (n,) = weight
        if n <= p - 1:
            return {weight: 1}
        if n <= 2 * p - 2:
            return {weight: 1, (2 * p - 2 - n,): 1}
        return None


class PinchStrategy(TiltingStrategy):
    """ch T((p - 1) rho + lambda) = ch Q when the sandwich leaves no room."""

    def __init__(self, engine: "CaseEngine") -> None:
        self.engine = engine

    @property
    def strategy_id(self) -> str:
        return "sandwich-pinch"

    @property
    def provenance(self) -> str:
        return "pinched"

    @property
    def independent(self) -> bool:
        return False

    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        from .conjecture import sandwich_pinch

        engine = self.engine
        lam = sub(weight, engine.steinberg_weight)
        if not (engine.datum.is_dominant(lam) and engine.datum.is_restricted(lam, engine.p)):
            return None
        try:
            result = sandwich_pinch(lam, engine)
        except TiltverError as exc:
            logger.debug(f"Pinch for T({format_weight(weight)}) unavailable: {exc}")
            return None
        if result.character is None:
            return None
        return expand_weyl_basis(result.character)


def default_strategies(engine: "CaseEngine") -> StrategyRegistry:
    registry = StrategyRegistry()
    for strategy in (
        IngestedTableStrategy(engine),
        SteinbergStrategy(engine),
        LowestAlcoveStrategy(engine),
        JantzenSimpleStrategy(engine),
        RankOneClosedFormStrategy(engine),
        PinchStrategy(engine),
    ):
        registry.register(strategy)
    return registry
