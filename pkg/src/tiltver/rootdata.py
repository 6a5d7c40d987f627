"""Root data for finite root systems of rank at most four.

Weights are integer tuples in fundamental-weight coordinates. Simple roots use
Bourbaki numbering and the Cartan convention ``C[i][j] = <alpha_j, alpha_i^vee>``,
so simple root ``alpha_j`` is column ``j`` of ``C``. Coroots are stored in
simple-coroot coordinates, which makes ``<lambda, beta^vee>`` a dot product.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import UnsupportedType
from .logging_config import get_logger

logger = get_logger("tiltver.engine")

Weight = tuple[int, ...]

SUPPORTED_RANKS: dict[str, range] = {
    "A": range(1, 5),
    "B": range(2, 5),
    "C": range(2, 5),
    "D": range(4, 5),
    "G": range(2, 3),
}

_LABEL = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*$")


def parse_type_label(label: str) -> tuple[str, int]:
    match = _LABEL.match(label)
    if not match:
        raise UnsupportedType(f"cannot parse root system label {label!r}")
    family, rank = match.group(1).upper(), int(match.group(2))
    if family not in SUPPORTED_RANKS or rank not in SUPPORTED_RANKS[family]:
        raise UnsupportedType(f"{family}{rank} is not a supported finite type")
    return family, rank


def format_weight(weight: Sequence[int]) -> str:
    return ",".join(str(int(x)) for x in weight)


def parse_weight(text: str, rank: Optional[int] = None) -> Weight:
    try:
        weight = tuple(int(part) for part in text.strip().split(","))
    except ValueError as exc:
        raise ValueError(f"bad weight {text!r}: expected comma-separated integers") from exc
    if rank is not None and len(weight) != rank:
        raise ValueError(f"weight {text!r} does not have rank {rank}")
    return weight


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Sequence[int], k: int) -> Weight:
    return tuple(k * x for x in a)


def pair(weight: Sequence[int], coroot: Sequence[int]) -> int:
    """``<weight, coroot>`` with the coroot in simple-coroot coordinates."""
    return sum(int(x) * int(c) for x, c in zip(weight, coroot))


def cartan_matrix(family: str, rank: int) -> np.ndarray:
    if family not in SUPPORTED_RANKS or rank not in SUPPORTED_RANKS[family]:
        raise UnsupportedType(f"{family}{rank} is not a supported finite type")
    c = 2 * np.eye(rank, dtype=np.int64)
    if family == "G":
        c[0, 1], c[1, 0] = -3, -1
        return c
    if family == "D":
        for i in range(rank - 2):
            c[i, i + 1] = c[i + 1, i] = -1
        c[rank - 3, rank - 1] = c[rank - 1, rank - 3] = -1
        return c
    for i in range(rank - 1):
        c[i, i + 1] = c[i + 1, i] = -1
    if family == "B":
        c[rank - 1, rank - 2] = -2
    elif family == "C":
        c[rank - 2, rank - 1] = -2
    return c


def _symmetrizer(c: np.ndarray) -> tuple[int, ...]:
    # d_i = (alpha_i, alpha_i) / 2, short roots normalised to d = 1
    n = len(c)
    d: list[Optional[Fraction]] = [None] * n
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and c[i, j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(int(c[i, j]), int(c[j, i]))
                queue.append(j)
    smallest = min(x for x in d if x is not None)
    return tuple(int(x / smallest) for x in d if x is not None)


def _positive_roots_simple_coords(c: np.ndarray) -> list[tuple[int, ...]]:
    n = len(c)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = list(simple)
    known = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(n):
                pairing = sum(beta[j] * int(c[i, j]) for j in range(n))
                down = 0
                lowered = list(beta)
                while True:
                    lowered[i] -= 1
                    if tuple(lowered) not in known:
                        break
                    down += 1
                # alpha_i-string through beta: down - up = <beta, alpha_i^vee>
                if down - pairing > 0:
                    candidate = tuple(b + (k == i) for k, b in enumerate(beta))
                    if candidate not in known:
                        known.add(candidate)
                        next_layer.append(candidate)
                        roots.append(candidate)
        layer = next_layer
    return roots


@dataclass(frozen=True)
class Root:
    simple_coords: tuple[int, ...]
    weight: Weight
    coroot: tuple[int, ...]
    norm: int  # (beta, beta), short roots have norm 2

    @property
    def height(self) -> int:
        """Sum of the simple-root coordinates."""
        return sum(self.simple_coords)

    @property
    def is_simple(self) -> bool:
        """Whether this is a simple root."""
        return self.height == 1

    @property
    def support(self) -> frozenset[int]:
        """Indices of the simple roots that occur in this root."""
        return frozenset(i for i, x in enumerate(self.simple_coords) if x)


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...]  # reduced word, leftmost letter applied last

    @property
    def length(self) -> int:
        """Length of the reduced word."""
        return len(self.word)

    @property
    def sign(self) -> int:
        """(-1) to the length, the determinant of the matrix."""
        return -1 if self.length % 2 else 1

    @property
    def array(self) -> np.ndarray:
        """The matrix on fundamental-weight coordinates as a numpy array."""
        return np.array(self.matrix, dtype=np.int64)

    def act(self, weight: Sequence[int]) -> Weight:
        """Linear action on a weight in fundamental-weight coordinates."""
        return tuple(sum(row[j] * weight[j] for j in range(len(weight))) for row in self.matrix)

    def act_on_coroot(self, coroot: Sequence[int]) -> tuple[int, ...]:
        """Coroot action of the inverse element, ``pair(w l, c) == pair(l, w.act_on_coroot(c))``."""
        n = len(coroot)
        return tuple(sum(self.matrix[i][j] * coroot[i] for i in range(n)) for j in range(n))


def _weyl_group(c: np.ndarray, generators: Sequence[int]) -> list[WeylElement]:
    n = len(c)
    identity = np.eye(n, dtype=np.int64)
    reflections = {}
    for i in generators:
        e_i = np.zeros((1, n), dtype=np.int64)
        e_i[0, i] = 1
        reflections[i] = identity - c[:, [i]] @ e_i
    start = tuple(map(tuple, identity.tolist()))
    seen = {start: ()}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        word = seen[tuple(map(tuple, current.tolist()))]
        for i in generators:
            image = reflections[i] @ current
            key = tuple(map(tuple, image.tolist()))
            if key not in seen:
                seen[key] = (i, *word)
                queue.append(image)
    return [WeylElement(matrix=key, word=word) for key, word in seen.items()]


def _adjugate(c: np.ndarray) -> tuple[np.ndarray, int]:
    det = int(round(np.linalg.det(c)))
    adj = np.rint(np.linalg.inv(c) * det).astype(np.int64)
    if not np.array_equal(c @ adj, det * np.eye(len(c), dtype=np.int64)):
        raise ArithmeticError("integer adjugate of the Cartan matrix did not verify")
    return adj, det


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Immutable root system data. Levi data share the ambient weight lattice."""

    label: str
    family: str
    rank: int
    cartan: np.ndarray
    symmetrizer: tuple[int, ...]
    simple_indices: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    weyl_group: tuple[WeylElement, ...]
    longest: WeylElement
    height_vector: tuple[int, ...]  # 2 rho^vee of the ambient datum, in coroot coordinates
    highest_short_root: Optional[Root]
    coxeter_number: Optional[int]
    ambient: str
    cartan_adjugate: np.ndarray = field(repr=False)
    cartan_det: int = field(repr=False)
    weyl_stack: np.ndarray = field(repr=False)
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def is_levi(self) -> bool:
        """Whether this datum is a Levi subsystem of a larger one."""
        return self.label != self.ambient

    @property
    def rho(self) -> Weight:
        """Sum of the fundamental weights of the ambient lattice."""
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def fundamental_weights(self) -> tuple[Weight, ...]:
        """The basis vectors omega_i."""
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        """alpha_i in fundamental-weight coordinates, the columns of the Cartan matrix."""
        return tuple(tuple(int(x) for x in self.cartan[:, i]) for i in range(self.rank))

    @property
    def convention(self) -> str:
        """Human-readable numbering convention, echoed in reports."""
        if self.family == "B":
            return f"Bourbaki {self.ambient}: alpha_{self.rank} short"
        if self.family == "C":
            return f"Bourbaki {self.ambient}: alpha_{self.rank} long (dual of B{self.rank})"
        if self.family == "G":
            return "Bourbaki G2: alpha_1 short"
        return f"Bourbaki {self.ambient}"

    def is_dominant(self, weight: Sequence[int]) -> bool:
        """Nonnegative pairing with every simple coroot of this datum."""
        return all(weight[i] >= 0 for i in self.simple_indices)

    def is_restricted(self, weight: Sequence[int], q: int) -> bool:
        """All coordinates lie in [0, q)."""
        return all(0 <= x < q for x in weight)

    def restricted_weights(self, q: int) -> list[Weight]:
        """The box X_q in ascending order_key."""
        grid = np.indices((q,) * self.rank).reshape(self.rank, -1).T
        weights = [tuple(int(x) for x in row) for row in grid]
        return sorted(weights, key=self.order_key)

    def order_key(self, weight: Sequence[int]) -> tuple[int, Weight]:
        """Total order refining dominance: height against 2 rho^vee, then coordinates."""
        return (pair(weight, self.height_vector), tuple(weight))

    def simple_root_coordinates(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Rational coordinates of ``weight`` in the simple roots."""
        coords = self.cartan_adjugate @ np.array(weight, dtype=np.int64)
        return tuple(Fraction(int(x), self.cartan_det) for x in coords)

    def in_rational_root_cone(self, weight: Sequence[int]) -> bool:
        """Whether ``weight`` is a nonnegative rational combination of simple roots."""
        return all(x >= 0 for x in self.simple_root_coordinates(weight))

    def in_root_semigroup(self, weight: Sequence[int], indices: Optional[Iterable[int]] = None) -> bool:
        """True when ``weight`` is in N J (all of Delta when ``indices`` is None)."""
        allowed = set(range(self.rank) if indices is None else indices)
        for i, x in enumerate(self.simple_root_coordinates(weight)):
            if x.denominator != 1 or x < 0 or (x and i not in allowed):
                return False
        return True

    def simple_reflection(self, i: int, weight: Sequence[int]) -> Weight:
        """s_i(weight) = weight - <weight, alpha_i^vee> alpha_i."""
        a = weight[i]
        return tuple(int(x - a * self.cartan[j, i]) for j, x in enumerate(weight))

    def dominant_conjugate(self, weight: Sequence[int]) -> tuple[Weight, int]:
        """Return the dominant element of the orbit and the parity of reflections used."""
        current = tuple(weight)
        parity = 0
        while True:
            for i in self.simple_indices:
                if current[i] < 0:
                    current = self.simple_reflection(i, current)
                    parity ^= 1
                    break
            else:
                return current, parity

    def levi(self, indices: Iterable[int]) -> "RootDatum":
        """Levi subsystem on the given 0-based simple root indices."""
        return _levi_datum(self, tuple(sorted(set(indices))))


def _assemble(
    label: str,
    family: str,
    c: np.ndarray,
    symmetrizer: tuple[int, ...],
    simple_indices: tuple[int, ...],
    roots: list[Root],
    height_vector: Optional[tuple[int, ...]],
    ambient: str,
) -> RootDatum:
    rank = len(c)
    weyl = _weyl_group(c, simple_indices)
    longest = max(weyl, key=lambda w: w.length)
    if height_vector is None:
        height_vector = tuple(sum(r.coroot[i] for r in roots) for i in range(rank))
    highest = None
    coxeter = None
    if simple_indices == tuple(range(rank)):
        short = [r for r in roots if r.norm == 2]
        highest = max(short, key=lambda r: r.height)
        coxeter = pair((1,) * rank, highest.coroot) + 1
    adj, det = _adjugate(c)
    stack = np.array([w.matrix for w in weyl], dtype=np.int64)
    datum = RootDatum(
        label=label,
        family=family,
        rank=rank,
        cartan=c,
        symmetrizer=symmetrizer,
        simple_indices=simple_indices,
        positive_roots=tuple(sorted(roots, key=lambda r: (r.height, r.simple_coords))),
        weyl_group=tuple(sorted(weyl, key=lambda w: (w.length, w.word))),
        longest=longest,
        height_vector=height_vector,
        highest_short_root=highest,
        coxeter_number=coxeter,
        ambient=ambient,
        cartan_adjugate=adj,
        cartan_det=det,
        weyl_stack=stack,
    )
    return datum


@lru_cache(maxsize=None)
def build_root_datum(family: str, rank: int) -> RootDatum:
    family = family.upper()
    c = cartan_matrix(family, rank)
    d = _symmetrizer(c)
    roots = []
    for coords in _positive_roots_simple_coords(c):
        norm = sum(coords[i] * coords[j] * d[i] * int(c[i, j]) for i in range(rank) for j in range(rank))
        coroot = tuple(2 * coords[i] * d[i] // norm for i in range(rank))
        weight = tuple(int(x) for x in c @ np.array(coords, dtype=np.int64))
        roots.append(Root(simple_coords=coords, weight=weight, coroot=coroot, norm=norm))
    label = f"{family}{rank}"
    datum = _assemble(label, family, c, d, tuple(range(rank)), roots, None, label)
    logger.debug(f"Built {label}: |Phi+|={len(roots)} |W|={len(datum.weyl_group)} h={datum.coxeter_number}")
    return datum


def root_datum_from_label(label: str) -> RootDatum:
    return build_root_datum(*parse_type_label(label))


@lru_cache(maxsize=None)
def _levi_datum(datum: RootDatum, indices: tuple[int, ...]) -> RootDatum:
    if not set(indices) <= set(datum.simple_indices):
        raise ValueError(f"J={indices} is not a subset of the simple roots of {datum.label}")
    if indices == datum.simple_indices:
        return datum
    roots = [r for r in datum.positive_roots if r.support <= set(indices)]
    tag = ",".join(str(i + 1) for i in indices)
    return _assemble(
        f"{datum.ambient}[J={tag}]",
        datum.family,
        datum.cartan,
        datum.symmetrizer,
        indices,
        roots,
        datum.height_vector,
        datum.ambient,
    )


@dataclass(frozen=True)
class LeviSubset:
    """A subset J of the simple roots together with its Levi root datum."""

    parent: RootDatum
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))
        if not set(self.indices) <= set(range(self.parent.rank)):
            raise ValueError(f"J={self.indices} out of range for {self.parent.label}")

    @property
    def datum(self) -> RootDatum:
        return self.parent.levi(self.indices)

    @property
    def is_proper(self) -> bool:
        return len(self.indices) < self.parent.rank

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return self.datum.positive_roots

    @property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        return self.datum.weyl_group

    @property
    def longest(self) -> WeylElement:
        return self.datum.longest

    @property
    def rho_j(self) -> tuple[Fraction, ...]:
        total = [Fraction(0)] * self.parent.rank
        for root in self.positive_roots:
            for i, x in enumerate(root.weight):
                total[i] += Fraction(x, 2)
        return tuple(total)

    def contains(self, difference: Sequence[int]) -> bool:
        """Membership of ``difference`` in N J."""
        return self.parent.in_root_semigroup(difference, self.indices)


def weyl_orbit(weight: Sequence[int], datum: RootDatum) -> set[Weight]:
    images = datum.weyl_stack @ np.array(weight, dtype=np.int64)
    return {tuple(int(x) for x in row) for row in images}


def dot_action(element: WeylElement, weight: Sequence[int], datum: RootDatum) -> Weight:
    return sub(element.act(add(weight, datum.rho)), datum.rho)


def normalize_weyl(weight: Sequence[int], datum: RootDatum) -> Optional[tuple[Weight, int]]:
    """Dot-normalise ``weight``: ``(w . weight, sign(w))`` with the result dominant.

    Returns None when ``weight + rho`` lies on a wall, so that chi(weight) = 0.
    """
    shifted, parity = datum.dominant_conjugate(add(weight, datum.rho))
    if any(shifted[i] == 0 for i in datum.simple_indices):
        return None
    return sub(shifted, datum.rho), (-1 if parity else 1)
