"""Tilting characters, b-coefficients and character-level tilting-module checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence

from ..charring import (
    Character,
    dual_involution,
    exact_divide,
    expand_orbit_basis,
    expand_weyl_basis,
    from_weyl_expansion,
    is_weyl_invariant,
    weyl_character,
)
from ..errors import NotDivisible, NotInvariant, TiltingDataMissing
from ..g1t import levi_truncate
from ..linkage import linkage_index_set
from ..logging_config import get_logger
from ..rootdata import LeviSubset, Weight, add, format_weight, sub
from .registry import StrategyRegistry

if TYPE_CHECKING:
    from ..engine import CaseEngine

logger = get_logger("tiltver.engine")


@dataclass(frozen=True)
class TiltingResolution:
    weight: Weight
    expansion: dict[Weight, int]  # chi-basis
    provenance: str
    strategy_id: str
    independent: bool


class TiltingResolver:
    """Runs the strategy chain for each requested weight and remembers the outcome."""

    def __init__(self, engine: "CaseEngine", registry: StrategyRegistry) -> None:
        self.engine = engine
        self.registry = registry
        self._resolved: dict[Weight, TiltingResolution] = {}

    def resolve(self, weight: Sequence[int]) -> TiltingResolution:
        weight = tuple(weight)
        cached = self._resolved.get(weight)
        if cached is not None:
            return cached
        if not self.engine.datum.is_dominant(weight):
            raise TiltingDataMissing(weight, "tilting modules are indexed by dominant weights")
        for strategy in self.registry:
            expansion = strategy.resolve(weight)
            if expansion is not None:
                resolution = TiltingResolution(
                    weight=weight,
                    expansion=expansion,
                    provenance=strategy.provenance,
                    strategy_id=strategy.strategy_id,
                    independent=strategy.independent,
                )
                logger.debug(
                    f"T({format_weight(weight)}) resolved by {strategy.strategy_id} ({len(expansion)} Weyl summands)"
                )
                self._resolved[weight] = resolution
                return resolution
        raise TiltingDataMissing(
            weight,
            f"add '{self.engine.datum.label} {self.engine.p} : T={format_weight(weight)} : "
            "chi=<weight> mult=<n>' lines to a tilting table",
        )

    def tilting_char(self, weight: Sequence[int]) -> Character:
        return from_weyl_expansion(self.resolve(weight).expansion, self.engine.datum)


def tilting_char(weight: Sequence[int], engine: "CaseEngine") -> Character:
    return engine.tilting.tilting_char(weight)


@dataclass
class PinchResult:
    weight: Weight
    residual: dict[Weight, int]  # orbit expansion of ch L(lambda) - q(lambda)
    index_set: set[Weight]
    character: Optional[Character]  # ch T((p - 1) rho + lambda) when pinched

    @property
    def pinched(self) -> bool:
        return self.character is not None


def sandwich_pinch(weight: Sequence[int], engine: "CaseEngine") -> PinchResult:
    """Squeeze ch T((p - 1) rho + weight) between ch Q and ch St * ch L(weight).

    Both bounds are St times a W-invariant character; when the residual
    ch L(weight) - q(weight) has no orbit coefficient on the linkage index set
    the tilting character is forced to equal ch Q.
    """
    weight = tuple(weight)
    q = engine.g1t.q_character(weight)
    residual = expand_orbit_basis(engine.simples.restricted_simple_char(weight) - q)
    index_set = linkage_index_set(weight, engine.ctx)
    pinched = not any(residual.get(mu, 0) for mu in index_set)
    character = engine.g1t.qhat_char(engine.g1t.qhat_weight(weight)) if pinched else None
    logger.debug(f"Pinch for lambda={format_weight(weight)}: {'pinched' if pinched else 'open'}")
    return PinchResult(weight=weight, residual=residual, index_set=index_set, character=character)


def t_character(weight: Sequence[int], engine: "CaseEngine") -> tuple[Character, TiltingResolution]:
    """t(weight) = ch T((p - 1) rho + weight) / chi((p - 1) rho)."""
    resolution = engine.tilting.resolve(add(engine.steinberg_weight, weight))
    char = from_weyl_expansion(resolution.expansion, engine.datum)
    return exact_divide(char, engine.steinberg_char), resolution


def b_coefficients(weight: Sequence[int], engine: "CaseEngine") -> tuple[dict[Weight, int], TiltingResolution]:
    t, resolution = t_character(weight, engine)
    return expand_orbit_basis(t), resolution


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckOutcome:
    weight: Weight
    checks: list[CheckResult] = field(default_factory=list)
    a: Optional[dict[Weight, int]] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, detail))


def evaluate_qhat_checks(
    weight: Sequence[int],
    qhat: Character,
    dual_partner: Character,
    steinberg: Character,
    index_set: set[Weight],
) -> CheckOutcome:
    """Necessary conditions on ch Q((p - 1) rho + w0 weight) for the tilting-module identity."""
    weight = tuple(weight)
    outcome = CheckOutcome(weight=weight)

    invariant = is_weyl_invariant(qhat)
    outcome.add("weyl-invariant", invariant)
    if invariant:
        negative = {mu: c for mu, c in expand_weyl_basis(qhat).items() if c < 0}
        outcome.add(
            "nonnegative-weyl-expansion",
            not negative,
            "; ".join(f"chi({format_weight(mu)}): {c}" for mu, c in negative.items()),
        )
    else:
        outcome.add("nonnegative-weyl-expansion", False, "character is not W-invariant")

    outcome.add(
        "self-dual",
        dual_involution(qhat) == dual_partner,
        "holds for every Q with restricted sigma, so a failure means an engine error",
    )

    try:
        q = exact_divide(qhat, steinberg)
    except NotDivisible as exc:
        outcome.add("divisible-by-steinberg", False, str(exc))
        return outcome
    outcome.add("divisible-by-steinberg", True)

    try:
        a = expand_orbit_basis(q)
    except NotInvariant as exc:
        outcome.add("linkage-support", False, str(exc))
        return outcome
    outcome.a = a
    outside = sorted(set(a) - index_set)
    outcome.add(
        "linkage-support",
        not outside,
        ", ".join(format_weight(mu) for mu in outside),
    )
    outcome.add("top-coefficient", a.get(weight) == 1, f"a_lambda = {a.get(weight, 0)}")
    return outcome


def tmc_necessary_checks(weight: Sequence[int], engine: "CaseEngine") -> CheckOutcome:
    weight = tuple(weight)
    sigma = engine.g1t.qhat_weight(weight)
    qhat = engine.g1t.qhat_char(sigma)
    dual_weight = tuple(-x for x in engine.datum.longest.act(sigma))
    dual_partner = engine.g1t.qhat_char(dual_weight)
    return evaluate_qhat_checks(
        weight, qhat, dual_partner, engine.steinberg_char, linkage_index_set(weight, engine.ctx)
    )


def levi_tilting_char(weight: Sequence[int], levi: LeviSubset, p: int) -> Character:
    """ch T_J(weight) for Levi subsets of rank at most one."""
    datum = levi.datum
    weight = tuple(weight)
    if not levi.indices:
        return Character.monomial(datum, weight)
    if len(levi.indices) > 1:
        raise TiltingDataMissing(weight, "Levi tilting characters are built in for |J| <= 1 only")
    (i,) = levi.indices
    n = weight[i]
    if n < 0:
        raise TiltingDataMissing(weight, "weight is not dominant for the Levi subgroup")
    char = weyl_character(weight, datum)
    if p - 1 < n <= 2 * p - 2:
        alpha = datum.simple_roots[i]
        lower = sub(weight, tuple((n + 1 - p) * x for x in alpha))
        char = char + weyl_character(lower, datum)
    elif n > 2 * p - 2:
        raise TiltingDataMissing(weight, f"<nu, alpha^vee> = {n} exceeds 2p - 2")
    return char


def levi_b_coefficients(weight: Sequence[int], levi: LeviSubset, p: int) -> dict[Weight, int]:
    datum = levi.datum
    steinberg_weight = tuple((p - 1) * x for x in levi.parent.rho)
    tilting = levi_tilting_char(add(steinberg_weight, weight), levi, p)
    return expand_orbit_basis(exact_divide(tilting, weyl_character(steinberg_weight, datum)))


def levi_a_coefficients(weight: Sequence[int], levi: LeviSubset, engine: "CaseEngine") -> dict[Weight, int]:
    """Levi-local a-coefficients from the truncation of the ambient injective hull."""
    datum = levi.datum
    steinberg_weight = engine.steinberg_weight
    top = add(steinberg_weight, weight)
    truncated = levi_truncate(engine.g1t.qhat_char(engine.g1t.qhat_weight(weight)), levi, top).with_datum(datum)
    q = exact_divide(truncated, weyl_character(steinberg_weight, datum))
    return expand_orbit_basis(q)
