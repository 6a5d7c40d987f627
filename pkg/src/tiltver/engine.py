"""Wires the per-case computation stack together for one validated CaseConfig."""

from __future__ import annotations

from functools import cached_property

from .charring import Character, weyl_character
from .config import CaseConfig
from .g1t import G1TCalculus
from .linkage import AlcoveContext, linkage_index_set
from .logging_config import get_logger
from .overrides import load_decomp_overrides
from .rootdata import Weight, root_datum_from_label
from .simples import SimpleCharacters
from .tilting.conjecture import TiltingResolver
from .tilting.strategies import default_strategies
from .tilting.table import load_tilting_table

logger = get_logger("tiltver.engine")


class CaseEngine:
    def __init__(self, cfg: CaseConfig) -> None:
        self.cfg = cfg
        self.datum = root_datum_from_label(cfg.type_label)
        self.ctx = AlcoveContext(self.datum, cfg.p, cfg.r)
        self.decomp_table = load_decomp_overrides(
            cfg.decomp_tables,
            self.ctx,
            include_builtin=cfg.builtin_overrides,
            data_root=cfg.data_root,
        )
        self.simples = SimpleCharacters(self.ctx, self.decomp_table, cfg.enumeration_limit, cfg.weight_spaces)
        self.g1t = G1TCalculus(self.simples)
        self.tilting_table = load_tilting_table(cfg.tilting_tables, self.ctx)
        self.registry = default_strategies(self)
        self.tilting = TiltingResolver(self, self.registry)
        logger.info(
            f"Engine ready for {self.datum.label} p={self.p} "
            f"({len(self.decomp_table)} decomposition rows, {len(self.tilting_table)} tilting rows)"
        )

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def steinberg_weight(self) -> Weight:
        return self.ctx.steinberg_weight

    @cached_property
    def steinberg_char(self) -> Character:
        return weyl_character(self.steinberg_weight, self.datum)

    @property
    def weights(self) -> list[Weight]:
        """The weights a sweep visits: the configured list, or all of X_1 in ascending order."""
        if self.cfg.weights:
            return sorted((tuple(w) for w in self.cfg.weights), key=self.datum.order_key)
        return self.datum.restricted_weights(self.p)

    def index_set(self, weight: Weight) -> set[Weight]:
        return linkage_index_set(weight, self.ctx)


def build_engine(cfg: CaseConfig) -> CaseEngine:
    return CaseEngine(cfg.validate())
