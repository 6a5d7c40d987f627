"""Affine Weyl group reflections and the strong linkage order at a prime p."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .config import is_prime
from .errors import ConfigurationError
from .logging_config import get_logger
from .rootdata import Root, RootDatum, Weight, add, format_weight, pair, sub

logger = get_logger("tiltver.engine")


@dataclass(frozen=True)
class AlcoveContext:
    datum: RootDatum
    p: int
    r: int = 1

    def __post_init__(self) -> None:
        if self.p < 2 or not is_prime(self.p):
            raise ConfigurationError(f"p must be a prime, got {self.p}")
        if self.r < 1:
            raise ConfigurationError(f"Frobenius level must be positive, got {self.r}")

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def steinberg_weight(self) -> Weight:
        return tuple((self.q - 1) * x for x in self.datum.rho)

    def with_datum(self, datum: RootDatum) -> "AlcoveContext":
        return AlcoveContext(datum, self.p, self.r)


def alpha0_pairing(weight: Sequence[int], datum: RootDatum) -> int:
    """<weight, alpha_0^vee> for the highest short root alpha_0."""
    root = datum.highest_short_root
    if root is None:
        raise ValueError(f"{datum.label} has no highest short root")
    return pair(weight, root.coroot)


def affine_reflect(weight: Sequence[int], root: Root, m: int, ctx: AlcoveContext) -> Weight:
    """s_{beta, mp} . weight = weight - (<weight + rho, beta^vee> - mp) beta."""
    step = pair(add(weight, ctx.datum.rho), root.coroot) - m * ctx.p
    return tuple(x - step * b for x, b in zip(weight, root.weight))


def _down_closure(start: Weight, ctx: AlcoveContext, shift: Weight) -> frozenset[Weight]:
    """Every weight reachable from ``start`` by downward affine reflections.

    Images whose translate by ``shift`` leaves the rational root cone cannot sit
    above a dominant weight (after the same shift) and are pruned.
    """
    datum = ctx.datum
    key = ("linkage", ctx.p, start, shift)
    cached = datum.cache.get(key)
    if cached is not None:
        return cached

    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        shifted = add(current, datum.rho)
        for root in datum.positive_roots:
            n = pair(shifted, root.coroot)
            m = (n - 1) // ctx.p
            while True:
                image = affine_reflect(current, root, m, ctx)
                if not datum.in_rational_root_cone(add(image, shift)):
                    break
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
                m -= 1
    result = frozenset(seen)
    datum.cache[key] = result
    logger.debug(f"Linkage closure of {format_weight(start)} at p={ctx.p} has {len(result)} weights")
    return result


def strong_linkage_down(weight: Sequence[int], ctx: AlcoveContext) -> set[Weight]:
    """Dominant weights mu with mu up-linked to ``weight``."""
    start = tuple(weight)
    return {w for w in _down_closure(start, ctx, ctx.datum.zero) if ctx.datum.is_dominant(w)}


def linkage_index_set(weight: Sequence[int], ctx: AlcoveContext) -> set[Weight]:
    """Dominant mu with (mu - rho) up-linked to (weight - rho)."""
    datum = ctx.datum
    start = sub(weight, datum.rho)
    closure = _down_closure(start, ctx, datum.rho)
    return {add(w, datum.rho) for w in closure if datum.is_dominant(add(w, datum.rho))}


def is_strongly_linked(lower: Sequence[int], upper: Sequence[int], ctx: AlcoveContext) -> bool:
    return tuple(lower) in _down_closure(tuple(upper), ctx, ctx.datum.zero)


def in_lowest_alcove_closure(weight: Sequence[int], ctx: AlcoveContext) -> bool:
    datum = ctx.datum
    if not datum.is_dominant(weight):
        return False
    return alpha0_pairing(add(weight, datum.rho), datum) <= ctx.p
