"""Characters of simple modules.

Restricted simple characters come from the Jantzen sum formula: the sum
``sum_i ch nabla(lambda)^i`` is expanded in simple characters of lower weights,
which bounds every decomposition number. Multiplicities the sum formula leaves
open are taken from a :class:`~tiltver.overrides.DecompTable` when it has a row,
and otherwise read off weight multiplicities of L(lambda) computed from the
contravariant form. General dominant
weights go through Steinberg's tensor product theorem.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .charring import Character, eliminate_dominant, from_weyl_expansion, weyl_character
from .errors import MalformedOverride, NegativeMultiplicity, NotDominant, Underdetermined
from .linkage import AlcoveContext, affine_reflect
from .logging_config import get_logger
from .overrides import DecompTable
from .rootdata import Weight, add, format_weight, normalize_weyl, pair
from .weightspaces import ContravariantForm

logger = get_logger("tiltver.engine")


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def jantzen_sum_expansion(weight: Sequence[int], ctx: AlcoveContext) -> dict[Weight, int]:
    """Weyl-character coefficients of the Jantzen sum for nabla(weight)."""
    datum = ctx.datum
    if not datum.is_dominant(weight):
        raise NotDominant(weight)
    shifted = add(weight, datum.rho)
    total: dict[Weight, int] = defaultdict(int)
    for root in datum.positive_roots:
        n = pair(shifted, root.coroot)
        for m in range(1, (n - 1) // ctx.p + 1):
            normal = normalize_weyl(affine_reflect(weight, root, m, ctx), datum)
            if normal is None:
                continue
            dominant, sign = normal
            total[dominant] += sign * p_valuation(m * ctx.p, ctx.p)
    return {w: c for w, c in sorted(total.items(), key=lambda t: datum.order_key(t[0]), reverse=True) if c}


def jantzen_sum(weight: Sequence[int], ctx: AlcoveContext) -> Character:
    return from_weyl_expansion(jantzen_sum_expansion(weight, ctx), ctx.datum)


def steinberg_digits(weight: Sequence[int], p: int) -> list[Weight]:
    """Restricted weights lambda_i with weight = sum p^i lambda_i."""
    digits = []
    rest = tuple(weight)
    while any(rest):
        digits.append(tuple(x % p for x in rest))
        rest = tuple(x // p for x in rest)
    return digits or [tuple(0 for _ in weight)]


@dataclass
class Resolution:
    """How the decomposition of nabla(weight) was pinned down."""

    weight: Weight
    multiplicities: dict[Weight, int]  # lower factors only
    sum_formula: dict[Weight, int]  # sum-formula coefficients in the simple basis
    source: str  # "jsf", "enumerated", "weight-spaces" or the table provenance


class SimpleCharacters:
    """Memoized simple characters for one (root system, p) and one decomposition table."""

    def __init__(
        self,
        ctx: AlcoveContext,
        table: Optional[DecompTable] = None,
        enumeration_limit: int = 4096,
        weight_spaces: bool = True,
    ) -> None:
        self.ctx = ctx
        self.datum = ctx.datum
        self.table = table or DecompTable(type_label=ctx.datum.label, p=ctx.p)
        self.enumeration_limit = enumeration_limit
        self.weight_spaces = weight_spaces
        self._restricted: dict[Weight, Character] = {}
        self._resolutions: dict[Weight, Resolution] = {}
        self._general: dict[Weight, Character] = {}

    def is_jsf_simple(self, weight: Sequence[int]) -> bool:
        return not jantzen_sum_expansion(weight, self.ctx)

    def simple_expansion(self, char: Character) -> dict[Weight, int]:
        """Expand a W-invariant character in simple characters."""
        return eliminate_dominant(char, self.simple_char, "simple character")

    def resolution(self, weight: Sequence[int]) -> Resolution:
        weight = tuple(weight)
        cached = self._resolutions.get(weight)
        if cached is None:
            self.restricted_simple_char(weight)
            cached = self._resolutions[weight]
        return cached

    def decomposition(self, weight: Sequence[int]) -> dict[Weight, int]:
        """[nabla(weight) : L(mu)] for all mu, including the top factor."""
        resolution = self.resolution(weight)
        return {tuple(weight): 1, **resolution.multiplicities}

    def restricted_simple_char(self, weight: Sequence[int]) -> Character:
        weight = tuple(weight)
        cached = self._restricted.get(weight)
        if cached is not None:
            return cached
        if not self.datum.is_dominant(weight):
            raise NotDominant(weight)
        if not self.datum.is_restricted(weight, self.ctx.p):
            raise ValueError(f"{format_weight(weight)} is not {self.ctx.p}-restricted")

        weyl = weyl_character(weight, self.datum)
        jsf = jantzen_sum_expansion(weight, self.ctx)
        if not jsf:
            resolution = Resolution(weight, {}, {}, "jsf")
            char = weyl
        else:
            coefficients = self.simple_expansion(from_weyl_expansion(jsf, self.datum))
            resolution = self._resolve(weight, coefficients)
            char = weyl
            for mu, m in resolution.multiplicities.items():
                char = char - m * self.simple_char(mu)
            if not char.is_nonnegative():
                raise NegativeMultiplicity(
                    f"ch L({format_weight(weight)}) has negative coefficients at p={self.ctx.p}"
                )
        logger.debug(f"L({format_weight(weight)}) at p={self.ctx.p}: dim {char.dimension} via {resolution.source}")
        self._resolutions[weight] = resolution
        self._restricted[weight] = char
        return char

    def _resolve(self, weight: Weight, coefficients: dict[Weight, int]) -> Resolution:
        for mu, c in coefficients.items():
            if c < 0:
                raise NegativeMultiplicity(
                    f"sum formula for nabla({format_weight(weight)}) has coefficient {c} at L({format_weight(mu)})"
                )

        override = self.table.get(weight)
        if override is not None:
            lower = {mu: m for mu, m in override.items() if mu != weight}
            for mu in set(lower) | set(coefficients):
                m, c = lower.get(mu, 0), coefficients.get(mu, 0)
                if (m > 0) != (c > 0) or m > c:
                    raise MalformedOverride(
                        f"[nabla({format_weight(weight)}) : L({format_weight(mu)})] = {m} is incompatible "
                        f"with the sum formula coefficient {c}",
                        self.table.provenance.get(weight),
                    )
            return Resolution(weight, lower, coefficients, self.table.provenance[weight])

        fixed = {mu: 1 for mu, c in coefficients.items() if c == 1}
        open_weights = [mu for mu, c in coefficients.items() if c > 1]
        if not open_weights:
            return Resolution(weight, fixed, coefficients, "jsf")

        choices = math.prod(coefficients[mu] for mu in open_weights)
        if choices <= self.enumeration_limit:
            survivors = self._enumerate(weight, fixed, open_weights, coefficients)
            if len(survivors) == 1:
                return Resolution(weight, {**fixed, **survivors[0]}, coefficients, "enumerated")
            logger.debug(
                f"nabla({format_weight(weight)}): {len(survivors)} nonnegative resolutions out of {choices}"
            )
        if not self.weight_spaces:
            raise Underdetermined(weight, open_weights)
        return self._resolve_by_weight_spaces(weight, fixed, open_weights, coefficients)

    def _enumerate(
        self,
        weight: Weight,
        fixed: dict[Weight, int],
        open_weights: list[Weight],
        coefficients: dict[Weight, int],
    ) -> list[dict[Weight, int]]:
        base = weyl_character(weight, self.datum)
        for mu in fixed:
            base = base - self.simple_char(mu)
        lower_chars = {mu: self.simple_char(mu) for mu in open_weights}
        survivors = []
        for combo in itertools.product(*(range(1, coefficients[mu] + 1) for mu in open_weights)):
            candidate = base
            for mu, m in zip(open_weights, combo):
                candidate = candidate - m * lower_chars[mu]
            if candidate.is_nonnegative():
                survivors.append(dict(zip(open_weights, combo)))
        return survivors

    def _resolve_by_weight_spaces(
        self,
        weight: Weight,
        fixed: dict[Weight, int],
        open_weights: list[Weight],
        coefficients: dict[Weight, int],
    ) -> Resolution:
        """Read each open multiplicity off dim L(weight)_mu, highest mu first.

        The coefficient of e(mu) in ch nabla(weight) is dim L(weight)_mu plus the
        contributions of the factors L(nu) with nu >= mu; L(mu) itself contributes
        its multiplicity once.
        """
        form = ContravariantForm(self.datum, weight, self.ctx.p)
        weyl = weyl_character(weight, self.datum)
        multiplicities = dict(fixed)
        for mu in sorted(open_weights, key=self.datum.order_key, reverse=True):
            covered = sum(m * self.simple_char(nu).coefficient(mu) for nu, m in multiplicities.items())
            m = weyl.coefficient(mu) - covered - form.dimension(mu)
            if not 1 <= m <= coefficients[mu]:
                raise NegativeMultiplicity(
                    f"[nabla({format_weight(weight)}) : L({format_weight(mu)})] = {m} from weight spaces "
                    f"contradicts the sum formula coefficient {coefficients[mu]}"
                )
            multiplicities[mu] = m
        logger.debug(f"nabla({format_weight(weight)}) resolved from weight spaces: {multiplicities}")
        return Resolution(weight, multiplicities, coefficients, "weight-spaces")

    def simple_char(self, weight: Sequence[int]) -> Character:
        """ch L(weight) for any dominant weight, by Steinberg's tensor product theorem."""
        weight = tuple(weight)
        cached = self._general.get(weight)
        if cached is not None:
            return cached
        if not self.datum.is_dominant(weight):
            raise NotDominant(weight)
        if self.datum.is_restricted(weight, self.ctx.p):
            return self.restricted_simple_char(weight)
        char = Character.monomial(self.datum, self.datum.zero)
        for i, digit in enumerate(steinberg_digits(weight, self.ctx.p)):
            char = char * self.restricted_simple_char(digit).frobenius_twist(self.ctx.p**i)
        self._general[weight] = char
        return char


@lru_cache(maxsize=32)
def _default_simples(ctx: AlcoveContext) -> SimpleCharacters:
    return SimpleCharacters(ctx)


def restricted_simple_char(
    weight: Sequence[int], ctx: AlcoveContext, table: Optional[DecompTable] = None
) -> Character:
    simples = SimpleCharacters(ctx, table) if table is not None else _default_simples(ctx)
    return simples.restricted_simple_char(weight)


def simple_char(weight: Sequence[int], ctx: AlcoveContext, table: Optional[DecompTable] = None) -> Character:
    simples = SimpleCharacters(ctx, table) if table is not None else _default_simples(ctx)
    return simples.simple_char(weight)
