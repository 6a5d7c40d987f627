"""Character calculus for G_1 T-modules.

Baby Verma characters are translates of one kernel
``prod_{beta > 0} sum_{0 <= i < p} e(-i beta)``; simple G_1 T-characters are
translates ``ch L(lambda_0) e(p lambda_1)``. Injective hulls are assembled
through reciprocity ``[Q(sigma) : Z'(tau)] = [Z'(tau) : L(sigma)]``.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .charring import Character, exact_divide, expand_orbit_basis, weyl_character
from .errors import ConfigurationError, NegativeMultiplicity, NotDivisible
from .linkage import AlcoveContext
from .logging_config import get_logger
from .rootdata import LeviSubset, RootDatum, Weight, add, dot_action, format_weight, sub
from .simples import SimpleCharacters

logger = get_logger("tiltver.engine")

Factor = tuple[Weight, Weight]  # (lambda_0 restricted, lambda_1)


def split_weight(weight: Sequence[int], p: int) -> Factor:
    """weight = lambda_0 + p lambda_1 with lambda_0 restricted."""
    low = tuple(x % p for x in weight)
    return low, tuple((x - r) // p for x, r in zip(weight, low))


def _kernel(datum: RootDatum, q: int) -> Character:
    key = ("baby-verma-kernel", q)
    kernel = datum.cache.get(key)
    if kernel is None:
        kernel = Character.monomial(datum, datum.zero)
        for root in datum.positive_roots:
            series = Character(datum, {tuple(-i * x for x in root.weight): 1 for i in range(q)})
            kernel = kernel * series
        datum.cache[key] = kernel
    return kernel


def baby_verma_char(weight: Sequence[int], ctx: AlcoveContext) -> Character:
    """ch Z'(weight) = e(weight) * prod_{beta > 0} sum_{i < p^r} e(-i beta)."""
    return _kernel(ctx.datum, ctx.q).translate(tuple(weight))


def levi_truncate(char: Character, levi: LeviSubset, top: Sequence[int]) -> Character:
    """Keep the weight spaces ``top - nu`` with ``nu`` in N J."""
    top = tuple(top)
    return char.restrict(lambda w: levi.contains(sub(top, w)))


@dataclass
class BabyVermaDecomp:
    """[Z'(tau) : L(lambda_0 + p lambda_1)] for tau in the restricted box."""

    p: int
    factors: dict[Weight, dict[Factor, int]] = field(default_factory=dict)

    def of(self, weight: Sequence[int]) -> dict[Factor, int]:
        """Factors of Z'(weight) for any weight, by translation from the box."""
        low, high = split_weight(weight, self.p)
        return {
            (l0, add(l1, high)): m for (l0, l1), m in self.factors[low].items()
        }


class G1TCalculus:
    """G_1 T characters for one (root system, p), backed by a simple-character engine."""

    def __init__(self, simples: SimpleCharacters) -> None:
        self.simples = simples
        self.ctx = simples.ctx
        self.datum = simples.datum
        self.p = self.ctx.p
        if self.ctx.r != 1:
            raise ConfigurationError("G1T calculus is implemented for Frobenius level r = 1 only")
        self._decomp = BabyVermaDecomp(p=self.p)
        self._qhat: dict[Weight, Character] = {}

    @property
    def steinberg_weight(self) -> Weight:
        return self.ctx.steinberg_weight

    def baby_verma_char(self, weight: Sequence[int]) -> Character:
        return baby_verma_char(weight, self.ctx)

    def g1t_simple_char(self, low: Sequence[int], high: Sequence[int]) -> Character:
        """ch L(low + p high) as a G_1 T-module: ch L(low) translated by p high."""
        return self.simples.restricted_simple_char(low).translate(tuple(self.p * x for x in high))

    def decompose_g1t(self, char: Character) -> list[tuple[Factor, int]]:
        """Unitriangular elimination against simple G_1 T-characters, highest first."""
        remaining = char
        result: list[tuple[Factor, int]] = []
        while remaining:
            top, coeff = remaining.leading()
            if coeff < 0:
                raise NegativeMultiplicity(
                    f"G1T decomposition reached coefficient {coeff} at {format_weight(top)}"
                )
            factor = split_weight(top, self.p)
            result.append((factor, coeff))
            remaining = remaining - coeff * self.g1t_simple_char(*factor)
        return result

    def baby_verma_decomposition(self, weight: Sequence[int]) -> dict[Factor, int]:
        low, _ = split_weight(weight, self.p)
        if low not in self._decomp.factors:
            factors: dict[Factor, int] = defaultdict(int)
            for factor, m in self.decompose_g1t(self.baby_verma_char(low)):
                factors[factor] += m
            self._decomp.factors[low] = dict(factors)
            logger.debug(f"Z'({format_weight(low)}) has {len(factors)} G1T composition factors")
        return self._decomp.of(weight)

    def linked(self, tau: Sequence[int], sigma: Sequence[int]) -> bool:
        """Whether sigma lies in W . tau + pX; otherwise Z'(tau) has no factor L(sigma + p nu)."""
        target = tuple(x % self.p for x in sigma)
        return any(
            tuple(x % self.p for x in dot_action(w, tau, self.datum)) == target for w in self.datum.weyl_group
        )

    def qhat_multiplicities(self, weight: Sequence[int]) -> dict[Weight, int]:
        """tau -> [Q(weight) : Z'(tau)] for any weight."""
        low, high = split_weight(weight, self.p)
        shift = tuple(self.p * x for x in high)
        box = self.datum.restricted_weights(self.p)
        result: dict[Weight, int] = {}
        for tau_low in box:
            if not self.linked(tau_low, low):
                continue
            for (l0, l1), m in self.baby_verma_decomposition(tau_low).items():
                if l0 == low:
                    tau = add(sub(tau_low, tuple(self.p * x for x in l1)), shift)
                    result[tau] = result.get(tau, 0) + m
        return result

    def qhat_char(self, weight: Sequence[int]) -> Character:
        weight = tuple(weight)
        cached = self._qhat.get(weight)
        if cached is None:
            cached = Character.zero(self.datum)
            for tau, m in self.qhat_multiplicities(weight).items():
                cached = cached + m * self.baby_verma_char(tau)
            self._qhat[weight] = cached
        return cached

    def qhat_weight(self, weight: Sequence[int]) -> Weight:
        """(p - 1) rho + w0 weight: the G_1 T-weight whose hull controls a(weight)."""
        return add(self.steinberg_weight, self.datum.longest.act(weight))

    def q_character(self, weight: Sequence[int]) -> Character:
        """q(weight) = ch Q((p - 1) rho + w0 weight) / chi((p - 1) rho)."""
        sigma = self.qhat_weight(weight)
        steinberg = weyl_character(self.steinberg_weight, self.datum)
        quotient = exact_divide(self.qhat_char(sigma), steinberg)
        expected = Character(
            self.datum,
            {sub(tau, self.steinberg_weight): m for tau, m in self.qhat_multiplicities(sigma).items()},
        )
        if quotient != expected:
            raise NotDivisible(
                f"ch Q({format_weight(sigma)}) / ch St disagrees with its baby Verma multiplicities"
            )
        return quotient

    def a_coefficients(self, weight: Sequence[int]) -> dict[Weight, int]:
        return expand_orbit_basis(self.q_character(weight))


@functools.lru_cache(maxsize=32)
def _default_calculus(ctx: AlcoveContext) -> G1TCalculus:
    return G1TCalculus(SimpleCharacters(ctx))


def g1t_simple_char(low: Sequence[int], high: Sequence[int], ctx: AlcoveContext) -> Character:
    return _default_calculus(ctx).g1t_simple_char(low, high)


def decompose_g1t(char: Character, ctx: AlcoveContext) -> list[tuple[Factor, int]]:
    return _default_calculus(ctx).decompose_g1t(char)


def qhat_char(weight: Sequence[int], ctx: AlcoveContext) -> Character:
    return _default_calculus(ctx).qhat_char(weight)


def a_coefficients(weight: Sequence[int], ctx: AlcoveContext) -> dict[Weight, int]:
    return _default_calculus(ctx).a_coefficients(weight)


def baby_verma_dimension(ctx: AlcoveContext) -> int:
    return ctx.q ** len(ctx.datum.positive_roots)
