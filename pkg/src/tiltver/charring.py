"""Exact arithmetic in the character ring Z[X].

A :class:`Character` is a finitely supported map from weights to integers,
tied to the root datum whose Weyl group it is compared against. Zero
coefficients are never stored.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

from .errors import DatumMismatch, NotDivisible, NotDominant, NotInvariant
from .logging_config import get_logger
from .rootdata import RootDatum, Weight, add, format_weight, normalize_weyl, pair, parse_weight, weyl_orbit

logger = get_logger("tiltver.engine")

Terms = Union[Mapping[Weight, int], Iterable[tuple[Weight, int]]]


class Character:
    """A finitely supported element of Z[X], stored as weight -> nonzero coefficient."""
    __slots__ = ("datum", "_terms")

    def __init__(self, datum: RootDatum, terms: Terms = ()) -> None:
        self.datum = datum
        collected: dict[Weight, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for weight, coeff in items:
            if coeff:
                collected[tuple(int(x) for x in weight)] += int(coeff)
        self._terms = {w: c for w, c in collected.items() if c}

    @classmethod
    def zero(cls, datum: RootDatum) -> "Character":
        """The zero character."""
        return cls(datum)

    @classmethod
    def monomial(cls, datum: RootDatum, weight: Weight, coeff: int = 1) -> "Character":
        """coeff * e(weight)."""
        return cls(datum, {tuple(weight): coeff})

    def coefficient(self, weight: Weight) -> int:
        """Coefficient of e(weight), zero off the support."""
        return self._terms.get(tuple(weight), 0)

    __getitem__ = coefficient

    def items(self) -> Iterator[tuple[Weight, int]]:
        return iter(self._terms.items())

    def support(self) -> set[Weight]:
        """Weights with a nonzero coefficient."""
        return set(self._terms)

    def as_dict(self) -> dict[Weight, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, weight: object) -> bool:
        return weight in self._terms

    @property
    def dimension(self) -> int:
        """Sum of all coefficients."""
        return sum(self._terms.values())

    def leading(self) -> tuple[Weight, int]:
        """The term that is largest for ``order_key``."""
        if not self._terms:
            raise ValueError("the zero character has no leading term")
        top = max(self._terms, key=self.datum.order_key)
        return top, self._terms[top]

    def is_nonnegative(self) -> bool:
        """Whether every stored coefficient is positive."""
        return all(c > 0 for c in self._terms.values())

    def translate(self, shift: Weight) -> "Character":
        """Multiply by e(shift)."""
        return Character(self.datum, {add(w, shift): c for w, c in self._terms.items()})

    def frobenius_twist(self, q: int) -> "Character":
        """Replace each e(w) by e(q w)."""
        return Character(self.datum, {tuple(q * x for x in w): c for w, c in self._terms.items()})

    def restrict(self, keep) -> "Character":
        """Keep the terms whose weight satisfies ``keep``."""
        return Character(self.datum, {w: c for w, c in self._terms.items() if keep(w)})

    def dominant_part(self) -> dict[Weight, int]:
        """Terms at dominant weights."""
        return {w: c for w, c in self._terms.items() if self.datum.is_dominant(w)}

    def with_datum(self, datum: RootDatum) -> "Character":
        """Same terms, read against another datum on the same lattice."""
        return Character(datum, self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.datum.ambient == other.datum.ambient and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Character") -> "Character":
        _check_lattice(self, other)
        merged = dict(self._terms)
        for w, c in other._terms.items():
            merged[w] = merged.get(w, 0) + c
        return Character(self.datum, merged)

    def __neg__(self) -> "Character":
        return Character(self.datum, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, other: Union[int, "Character"]) -> "Character":
        if isinstance(other, Character):
            return multiply(self, other)
        return Character(self.datum, {w: other * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return f"Character({self.datum.label}, 0)"
        ordered = sorted(self._terms.items(), key=lambda t: self.datum.order_key(t[0]), reverse=True)
        body = " + ".join(f"{c}e({format_weight(w)})" for w, c in ordered[:8])
        more = " + ..." if len(ordered) > 8 else ""
        return f"Character({self.datum.label}, {body}{more})"


def _check_lattice(a: Character, b: Character) -> None:
    if a.datum.ambient != b.datum.ambient or a.datum.rank != b.datum.rank:
        raise DatumMismatch(f"cannot combine characters of {a.datum.label} and {b.datum.label}")


def multiply(a: Character, b: Character) -> Character:
    """Product in Z[X]."""
    _check_lattice(a, b)
    out: dict[Weight, int] = defaultdict(int)
    for wa, ca in a.items():
        for wb, cb in b.items():
            out[add(wa, wb)] += ca * cb
    return Character(a.datum, out)


def orbit_sum(weight: Weight, datum: RootDatum) -> Character:
    """Sum of e(w) over the W-orbit of ``weight``."""
    if not datum.is_dominant(weight):
        raise NotDominant(weight)
    return Character(datum, {w: 1 for w in weyl_orbit(weight, datum)})


def _alternant(weight: Weight, datum: RootDatum) -> Character:
    images = datum.weyl_stack @ np.array(weight, dtype=np.int64)
    return Character(
        datum,
        [(tuple(int(x) for x in row), element.sign) for row, element in zip(images, datum.weyl_group)],
    )


def _dominant_weyl_character(weight: Weight, datum: RootDatum) -> Character:
    key = ("weyl", weight)
    cached = datum.cache.get(key)
    if cached is None:
        denominator = datum.cache.get(("alternant", "rho"))
        if denominator is None:
            denominator = _alternant(datum.rho, datum)
            datum.cache[("alternant", "rho")] = denominator
        cached = exact_divide(_alternant(add(weight, datum.rho), datum), denominator)
        datum.cache[key] = cached
    return cached


def weyl_character(weight: Weight, datum: RootDatum) -> Character:
    """chi(weight) for any weight, via the dot-action sign rule."""
    normal = normalize_weyl(weight, datum)
    if normal is None:
        return Character.zero(datum)
    dominant, sign = normal
    char = _dominant_weyl_character(dominant, datum)
    return char if sign > 0 else -char


def weyl_dimension(weight: Weight, datum: RootDatum) -> int:
    shifted = add(weight, datum.rho)
    value = Fraction(1)
    for root in datum.positive_roots:
        value *= Fraction(pair(shifted, root.coroot), pair(datum.rho, root.coroot))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl dimension for {format_weight(weight)}")
    return int(value)


def _heap_key(datum: RootDatum, weight: Weight) -> tuple:
    height, coords = datum.order_key(weight)
    return (-height, tuple(-x for x in coords))


def exact_divide(num: Character, den: Character) -> Character:
    """Return q with q * den == num, by leading-term elimination.

    Quotient terms must stay inside the coordinate box allowed by the
    supports of num and den; leaving it (or a non-dividing coefficient)
    raises NotDivisible.
    """
    _check_lattice(num, den)
    if not den:
        raise NotDivisible("division by the zero character")
    datum = num.datum
    if not num:
        return Character.zero(datum)
    lead_weight, lead_coeff = den.leading()
    rank = datum.rank
    num_support, den_support = num.support(), den.support()
    low = [min(w[i] for w in num_support) - min(w[i] for w in den_support) for i in range(rank)]
    high = [max(w[i] for w in num_support) - max(w[i] for w in den_support) for i in range(rank)]

    remainder = num.as_dict()
    heap = [(_heap_key(datum, w), w) for w in remainder]
    heapq.heapify(heap)
    den_terms = list(den.items())
    quotient: dict[Weight, int] = {}
    while remainder:
        _, top = heapq.heappop(heap)
        coeff = remainder.get(top)
        if not coeff:
            continue
        factor, rest = divmod(coeff, lead_coeff)
        if rest:
            raise NotDivisible(
                f"coefficient {coeff} at {format_weight(top)} is not divisible by {lead_coeff}"
            )
        shift = tuple(t - s for t, s in zip(top, lead_weight))
        if any(x < lo or x > hi for x, lo, hi in zip(shift, low, high)):
            raise NotDivisible(f"remainder term {format_weight(top)} cannot be eliminated")
        quotient[shift] = factor
        for weight, c in den_terms:
            target = add(shift, weight)
            updated = remainder.get(target, 0) - factor * c
            if updated:
                if target not in remainder:
                    heapq.heappush(heap, (_heap_key(datum, target), target))
                remainder[target] = updated
            else:
                remainder.pop(target, None)
    return Character(datum, quotient)


def is_weyl_invariant(char: Character) -> bool:
    """Whether the coefficients are constant on W-orbits."""
    datum = char.datum
    for weight, coeff in char.items():
        for i in datum.simple_indices:
            if char.coefficient(datum.simple_reflection(i, weight)) != coeff:
                return False
    return True


def _require_invariant(char: Character) -> None:
    if not is_weyl_invariant(char):
        raise NotInvariant(f"character is not invariant under the Weyl group of {char.datum.label}")


def _sorted_expansion(datum: RootDatum, expansion: Mapping[Weight, int]) -> dict[Weight, int]:
    ordered = sorted(expansion.items(), key=lambda t: datum.order_key(t[0]), reverse=True)
    return {w: c for w, c in ordered if c}


def expand_orbit_basis(char: Character) -> dict[Weight, int]:
    """Coefficients in the orbit-sum basis, highest first."""
    _require_invariant(char)
    return _sorted_expansion(char.datum, char.dominant_part())


def from_orbit_expansion(expansion: Mapping[Weight, int], datum: RootDatum) -> Character:
    total: dict[Weight, int] = defaultdict(int)
    for weight, coeff in expansion.items():
        for image in weyl_orbit(weight, datum):
            total[image] += coeff
    return Character(datum, total)


def eliminate_dominant(
    char: Character, basis, what: str = "basis"
) -> dict[Weight, int]:
    """Expand a W-invariant character in a unitriangular basis indexed by dominant weights.

    ``basis(weight)`` must return a character with leading term ``e(weight)``.
    """
    _require_invariant(char)
    datum = char.datum
    remaining = char.dominant_part()
    result: dict[Weight, int] = {}
    while remaining:
        top = max(remaining, key=datum.order_key)
        coeff = remaining[top]
        result[top] = coeff
        element = basis(top)
        for weight, m in element.dominant_part().items():
            updated = remaining.get(weight, 0) - coeff * m
            if updated:
                remaining[weight] = updated
            else:
                remaining.pop(weight, None)
        if top in remaining:
            raise NotInvariant(f"{what} element at {format_weight(top)} is not unitriangular")
    return _sorted_expansion(datum, result)


def expand_weyl_basis(char: Character) -> dict[Weight, int]:
    """Coefficients in the Weyl-character basis, highest first."""
    datum = char.datum
    return eliminate_dominant(char, lambda w: _dominant_weyl_character(w, datum), "Weyl character")


def from_weyl_expansion(expansion: Mapping[Weight, int], datum: RootDatum) -> Character:
    total = Character.zero(datum)
    for weight, coeff in expansion.items():
        total = total + coeff * weyl_character(weight, datum)
    return total


def dual_involution(char: Character) -> Character:
    """Coefficient at mu of the result is the coefficient at -w0 mu of ``char``."""
    longest = char.datum.longest
    return Character(char.datum, {tuple(-x for x in longest.act(w)): c for w, c in char.items()})


def serialize_character(char: Character) -> str:
    """Canonical text form: one ``c: w1,...,wr`` line per term, highest first."""
    ordered = sorted(char.items(), key=lambda t: char.datum.order_key(t[0]), reverse=True)
    return "\n".join(f"{c}: {format_weight(w)}" for w, c in ordered)


def parse_character(text: str, datum: RootDatum) -> Character:
    """Inverse of serialize_character."""
    terms = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        coeff, _, weight = line.partition(":")
        terms.append((parse_weight(weight, datum.rank), int(coeff)))
    return Character(datum, terms)

