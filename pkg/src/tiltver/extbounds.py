"""Candidate highest weights for Ext^1 between restricted simple modules.

For lambda, mu in X_1 a weight gamma can only contribute when, for some
simple root alpha,

    p gamma <= -w0 lambda + mu + alpha        and
    p gamma <= 2(p - 1) rho + w0 mu - lambda,

with <= the dominance order (difference in N Delta). Each candidate is then
compared with the bound <gamma, alpha_0^vee> <= h - 2 (h - 1 in type A1).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import yaml

from .errors import ConfigurationError
from .linkage import AlcoveContext, alpha0_pairing, in_lowest_alcove_closure
from .logging_config import get_logger
from .rootdata import RootDatum, Weight, add, format_weight, pair, parse_weight, root_datum_from_label, sub
from .simples import jantzen_sum_expansion

logger = get_logger("tiltver.engine")


class SimplicityConclusion(str, enum.Enum):
    FORCED_SIMPLE_TILTING = "ForcedSimpleTilting"
    NEEDS_DATA = "NeedsData"


class Resolution(str, enum.Enum):
    FORCED = "forced"  # lowest alcove closure: L = nabla = Delta = T
    JSF_SIMPLE = "jsf-simple"  # vanishing sum formula
    FACT = "fact"  # ruled out by ingested Ext facts
    NOT_SIMPLE = "not-simple"


def dominance_leq(lower: Sequence[int], upper: Sequence[int], datum: RootDatum) -> bool:
    return datum.in_root_semigroup(sub(upper, lower))


def and_bound(lam: Sequence[int], mu: Sequence[int], alpha: int, datum: RootDatum) -> Weight:
    """-w0 lambda + mu + alpha."""
    minus_w0 = tuple(-x for x in datum.longest.act(lam))
    return add(add(minus_w0, mu), datum.simple_roots[alpha])


def bnp_bound(lam: Sequence[int], mu: Sequence[int], ctx: AlcoveContext) -> Weight:
    """2(p - 1) rho + w0 mu - lambda."""
    datum = ctx.datum
    twice = tuple(2 * (ctx.p - 1) * x for x in datum.rho)
    return sub(add(twice, datum.longest.act(mu)), lam)


def bound_value(datum: RootDatum) -> int:
    h = datum.coxeter_number
    return h - 1 if datum.label == "A1" else h - 2


def prop_bound_check(gamma: Sequence[int], ctx: AlcoveContext) -> bool:
    return alpha0_pairing(gamma, ctx.datum) <= bound_value(ctx.datum)


def bound_hypotheses_hold(datum: RootDatum, p: int) -> bool:
    """The bound needs p > 2 with two root lengths and p > 3 in type G2."""
    if datum.family == "G":
        return p > 3
    if len(set(root.norm for root in datum.positive_roots)) > 1:
        return p > 2
    return True


def two_rho_minus_alpha_pairing(alpha: int, datum: RootDatum) -> int:
    """<2 rho - alpha, alpha_0^vee>."""
    two_rho = tuple(2 * x for x in datum.rho)
    return alpha0_pairing(sub(two_rho, datum.simple_roots[alpha]), datum)


def combined_inequality_holds(gamma: Sequence[int], alpha: int, ctx: AlcoveContext) -> bool:
    """2p <gamma, alpha_0^vee> <= 2p (h - 1) - <2 rho - alpha, alpha_0^vee>."""
    datum = ctx.datum
    h = datum.coxeter_number
    lhs = 2 * ctx.p * alpha0_pairing(gamma, datum)
    return lhs <= 2 * ctx.p * (h - 1) - two_rho_minus_alpha_pairing(alpha, datum)


def _box(limit: Weight, ctx: AlcoveContext) -> list[Weight]:
    datum = ctx.datum
    height = pair(limit, datum.height_vector)
    if height < 0:
        return []
    ranges = []
    for j in range(datum.rank):
        unit = datum.height_vector[j]
        ranges.append(range(height // (ctx.p * unit) + 1))
    return [tuple(g) for g in itertools.product(*ranges)]


def and_witness(gamma: Sequence[int], lam: Sequence[int], mu: Sequence[int], ctx: AlcoveContext) -> Optional[int]:
    scaled = tuple(ctx.p * x for x in gamma)
    for alpha in range(ctx.datum.rank):
        if dominance_leq(scaled, and_bound(lam, mu, alpha, ctx.datum), ctx.datum):
            return alpha
    return None


def ext_candidates(
    lam: Sequence[int], mu: Sequence[int], ctx: AlcoveContext, *, require_and: bool = True
) -> set[Weight]:
    """Dominant gamma satisfying both inequalities (only the second when ``require_and`` is off)."""
    datum = ctx.datum
    upper = bnp_bound(lam, mu, ctx)
    found = set()
    for gamma in _box(upper, ctx):
        scaled = tuple(ctx.p * x for x in gamma)
        if not dominance_leq(scaled, upper, datum):
            continue
        if require_and and and_witness(gamma, lam, mu, ctx) is None:
            continue
        found.add(gamma)
    return found


def bound_region(ctx: AlcoveContext) -> list[Weight]:
    """Dominant gamma with <gamma, alpha_0^vee> within the bound."""
    datum = ctx.datum
    bound = bound_value(datum)
    grid = itertools.product(range(bound + 1), repeat=datum.rank)
    region = [tuple(g) for g in grid if alpha0_pairing(g, datum) <= bound]
    return sorted(region, key=datum.order_key)


def simplicity_conclusion(gamma: Sequence[int], ctx: AlcoveContext) -> SimplicityConclusion:
    if in_lowest_alcove_closure(gamma, ctx):
        return SimplicityConclusion.FORCED_SIMPLE_TILTING
    return SimplicityConclusion.NEEDS_DATA


@dataclass(frozen=True)
class ExtFact:
    type_label: str
    p: int
    modules: frozenset[Weight]
    source: str


def load_ext_facts(path: Path) -> dict[tuple[str, int], ExtFact]:
    """Read published Ext^1 composition-factor lists from a YAML file."""
    if not path.exists():
        logger.warning(f"Ext facts file not found: {path}")
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigurationError(f"Failed to load Ext facts from {path}: {exc}") from exc

    if not document or "facts" not in document:
        logger.warning(f"No facts defined in {path}")
        return {}

    facts: dict[tuple[str, int], ExtFact] = {}
    for entry in document["facts"]:
        try:
            label = str(entry["type"]).upper()
            p = int(entry["p"])
            modules = frozenset(parse_weight(str(w)) for w in entry.get("modules", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"Malformed Ext fact in {path}: {entry!r}") from exc
        facts[(label, p)] = ExtFact(label, p, modules, str(entry.get("source", "")))
    logger.debug(f"Loaded {len(facts)} Ext fact entries from {path}")
    return facts


@dataclass
class ExtCandidate:
    gamma: Weight
    witness: Optional[int]  # index of the simple root alpha, None for second-inequality-only candidates
    satisfies_and: bool
    satisfies_bnp: bool
    alpha0_pairing: int
    bound_ok: bool
    in_lowest_alcove: bool
    combined_ok: Optional[bool]
    resolution: Resolution


@dataclass
class ExtCandidateReport:
    type_label: str
    p: int
    coxeter_number: int
    bound: int
    hypotheses_hold: bool
    candidates: list[ExtCandidate] = field(default_factory=list)
    region: list[Weight] = field(default_factory=list)
    pairs: int = 0
    fact: Optional[ExtFact] = None
    notes: list[str] = field(default_factory=list)

    @property
    def candidate_weights(self) -> list[Weight]:
        return [c.gamma for c in self.candidates]

    @property
    def bound_unsupported(self) -> bool:
        return not self.hypotheses_hold

    @property
    def bound_violations(self) -> list[Weight]:
        return [c.gamma for c in self.candidates if not c.bound_ok]

    @property
    def complete_reducibility(self) -> bool:
        return all(c.resolution != Resolution.NOT_SIMPLE for c in self.candidates)


def _resolve(gamma: Weight, ctx: AlcoveContext, fact: Optional[ExtFact]) -> Resolution:
    if in_lowest_alcove_closure(gamma, ctx):
        return Resolution.FORCED
    if not jantzen_sum_expansion(gamma, ctx):
        return Resolution.JSF_SIMPLE
    if fact is not None and gamma not in fact.modules:
        return Resolution.FACT
    return Resolution.NOT_SIMPLE


def ext_report(
    ctx: AlcoveContext, facts: Optional[dict[tuple[str, int], ExtFact]] = None
) -> ExtCandidateReport:
    """Sweep X_1 x X_1 and collect the candidate weights with their resolution."""
    datum = ctx.datum
    h = datum.coxeter_number
    hypotheses = bound_hypotheses_hold(datum, ctx.p)
    fact = (facts or {}).get((datum.label, ctx.p))
    report = ExtCandidateReport(
        type_label=datum.label,
        p=ctx.p,
        coxeter_number=h,
        bound=bound_value(datum),
        hypotheses_hold=hypotheses,
        region=bound_region(ctx),
        fact=fact,
    )

    restricted = datum.restricted_weights(ctx.p)
    witnesses: dict[Weight, Optional[int]] = {}
    for lam, mu in itertools.product(restricted, repeat=2):
        report.pairs += 1
        for gamma in ext_candidates(lam, mu, ctx, require_and=hypotheses):
            witness = and_witness(gamma, lam, mu, ctx)
            if gamma not in witnesses or (witnesses[gamma] is None and witness is not None):
                witnesses[gamma] = witness

    for gamma in sorted(witnesses, key=datum.order_key):
        witness = witnesses[gamma]
        report.candidates.append(
            ExtCandidate(
                gamma=gamma,
                witness=witness,
                satisfies_and=witness is not None,
                satisfies_bnp=True,
                alpha0_pairing=alpha0_pairing(gamma, datum),
                bound_ok=prop_bound_check(gamma, ctx),
                in_lowest_alcove=in_lowest_alcove_closure(gamma, ctx),
                combined_ok=combined_inequality_holds(gamma, witness, ctx) if witness is not None else None,
                resolution=_resolve(gamma, ctx, fact),
            )
        )

    if ctx.p >= 2 * h - 4:
        report.notes.append(f"p >= 2h - 4 = {2 * h - 4}: covered by the generic bound, nothing to check")
    if not hypotheses:
        report.notes.append(
            "bound-unsupported: the prime is too small for the bound, candidates use the second inequality only"
        )
    if datum.label == "G2" and ctx.p == 2:
        report.notes.append("G2 at p = 2 is excluded: the tilting-module identity fails there")
    if fact is not None:
        listed = ", ".join(format_weight(w) for w in sorted(fact.modules, key=datum.order_key))
        report.notes.append(f"ingested Ext facts: only L({listed}) arise ({fact.source})")
    logger.info(f"Ext sweep {datum.label} p={ctx.p}: {report.pairs} pairs, {len(report.candidates)} candidates")
    return report


def rank2_ext_report(
    type_label: str, p: int, facts: Optional[dict[tuple[str, int], ExtFact]] = None
) -> ExtCandidateReport:
    datum = root_datum_from_label(type_label)
    if datum.rank != 2:
        raise ConfigurationError(f"{datum.label} is not of rank 2")
    return ext_report(AlcoveContext(datum, p), facts)
