"""Weight multiplicities of simple modules from the contravariant form.

The weight space of L(lambda) at depth ``nu`` (the weight ``lambda - sum nu_i alpha_i``)
is spanned by the vectors ``F_i^(k) b`` with ``k`` a power of p and ``b`` running
over a basis of the space at depth ``nu - k e_i``. The contravariant form is
nondegenerate on L(lambda), so the rank mod p of its Gram matrix on that
spanning set is the weight multiplicity.

Raising operators are stored in coordinates, depth by depth, and every Gram
entry is reduced to data of smaller depth through ``E_j F_i = F_i E_j`` for
``i != j`` and

    E_i^(l) F_i^(k) = sum_t binom(h_i + l - k, t) F_i^(k - t) E_i^(l - t)

where ``h_i`` is read on the vector the whole product is applied to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NotDominant
from .logging_config import get_logger
from .rootdata import RootDatum, Weight, format_weight, sub

logger = get_logger("tiltver.engine")

Depth = tuple[int, ...]  # simple-root coordinates of lambda - mu
Candidate = tuple[int, int, int]  # F_i^(k) applied to basis vector c of depth nu - k e_i


def generalized_binomial(x: int, t: int) -> int:
    """binom(x, t) for any integer x and t >= 0."""
    numerator = 1
    for s in range(t):
        numerator *= x - s
    return numerator // math.factorial(t)


def pinv(value: int, p: int) -> int:
    return pow(int(value) % p, -1, p)


def independent_rows(matrix: np.ndarray, p: int) -> list[int]:
    """Indices of a maximal set of rows independent mod p, taken in order."""
    echelon: list[tuple[int, np.ndarray]] = []
    chosen: list[int] = []
    for index in range(matrix.shape[0]):
        reduced = matrix[index] % p
        for pivot, row in echelon:
            if reduced[pivot]:
                reduced = (reduced - reduced[pivot] * row) % p
        nonzero = np.flatnonzero(reduced)
        if nonzero.size:
            pivot = int(nonzero[0])
            echelon.append((pivot, (reduced * pinv(reduced[pivot], p)) % p))
            chosen.append(index)
    return chosen


def inverse_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p by Gauss-Jordan elimination."""
    n = matrix.shape[0]
    work = np.concatenate([matrix % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        rows = np.flatnonzero(work[col:, col])
        if not rows.size:
            raise ValueError("matrix is singular mod p")
        pivot = col + int(rows[0])
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        work[col] = (work[col] * pinv(work[col, col], p)) % p
        for other in range(n):
            if other != col and work[other, col]:
                work[other] = (work[other] - work[other, col] * work[col]) % p
    return work[:, n:]


@dataclass
class WeightSpace:
    """A basis of one weight space of L(lambda), seen through the form."""

    gram: np.ndarray
    gram_inverse: np.ndarray
    # (j, l) -> columns are E_j^(l) of the basis vectors, in the basis at depth nu - l e_j
    raising: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return int(self.gram.shape[0])

    @classmethod
    def empty(cls) -> "WeightSpace":
        nothing = np.zeros((0, 0), dtype=np.int64)
        return cls(nothing, nothing.copy())


class ContravariantForm:
    """Weight spaces of L(weight) over F_p, built from the highest weight down."""

    def __init__(self, datum: RootDatum, weight: Sequence[int], p: int) -> None:
        if not datum.is_dominant(weight):
            raise NotDominant(weight)
        self.datum = datum
        self.weight: Weight = tuple(weight)
        self.p = p
        top = np.ones((1, 1), dtype=np.int64)
        self._spaces: dict[Depth, WeightSpace] = {datum.zero: WeightSpace(top, top.copy())}
        self._lowering: dict[tuple[Depth, int, int], np.ndarray] = {}

    def depth_of(self, mu: Sequence[int]) -> Optional[Depth]:
        """Simple-root coordinates of weight - mu, or None when mu is not below weight."""
        coords = self.datum.simple_root_coordinates(sub(self.weight, mu))
        if any(x.denominator != 1 or x < 0 for x in coords):
            return None
        depth = tuple(int(x) for x in coords)
        if any(depth[i] for i in range(self.datum.rank) if i not in self.datum.simple_indices):
            return None
        return depth

    def dimension(self, mu: Sequence[int]) -> int:
        """dim L(weight)_mu."""
        depth = self.depth_of(mu)
        return 0 if depth is None else self.space(depth).dim

    def space(self, depth: Depth) -> WeightSpace:
        cached = self._spaces.get(depth)
        if cached is None:
            cached = self._build(depth)
            self._spaces[depth] = cached
            logger.debug(f"L({format_weight(self.weight)}) at depth {format_weight(depth)}: dim {cached.dim}")
        return cached

    def _steps(self, n: int) -> list[int]:
        steps, k = [], 1
        while k <= n:
            steps.append(k)
            k *= self.p
        return steps

    @staticmethod
    def _shift(depth: Depth, i: int, k: int) -> Depth:
        moved = list(depth)
        moved[i] += k
        return tuple(moved)

    def _coweight(self, depth: Depth, i: int) -> int:
        """<mu, alpha_i^vee> for the weight mu at this depth."""
        return self.weight[i] - sum(depth[s] * int(self.datum.cartan[i, s]) for s in self.datum.simple_indices)

    def _build(self, depth: Depth) -> WeightSpace:
        candidates: list[Candidate] = []
        for i in self.datum.simple_indices:
            for k in self._steps(depth[i]):
                parent = self.space(self._shift(depth, i, -k))
                candidates.extend((i, k, c) for c in range(parent.dim))
        if not candidates:
            return WeightSpace.empty()

        moves = sorted({(i, k) for i, k, _ in candidates})
        images = {
            (i, k): np.column_stack([self._raise(depth, cand, i, k) for cand in candidates])
            for i, k in moves
        }
        gram = np.zeros((len(candidates), len(candidates)), dtype=np.int64)
        for row, (i, k, c) in enumerate(candidates):
            parent = self.space(self._shift(depth, i, -k))
            gram[row] = (parent.gram[c] @ images[(i, k)]) % self.p

        chosen = independent_rows(gram, self.p)
        if not chosen:
            return WeightSpace.empty()
        block = gram[np.ix_(chosen, chosen)]
        space = WeightSpace(block, inverse_mod(block, self.p))
        basis = [candidates[row] for row in chosen]
        for j in self.datum.simple_indices:
            for l in range(1, depth[j] + 1):
                space.raising[(j, l)] = np.column_stack([self._raise(depth, cand, j, l) for cand in basis])
        return space

    def _lower(self, source: Depth, i: int, k: int) -> np.ndarray:
        """F_i^(k) from depth ``source`` to ``source + k e_i``, in coordinates."""
        key = (source, i, k)
        cached = self._lowering.get(key)
        if cached is None:
            src = self.space(source)
            target = self.space(self._shift(source, i, k))
            if not src.dim or not target.dim:
                cached = np.zeros((target.dim, src.dim), dtype=np.int64)
            else:
                # <b', F b> = <E b', b> pins down F b against the target basis
                paired = (target.raising[(i, k)].T @ src.gram) % self.p
                cached = (target.gram_inverse @ paired) % self.p
            self._lowering[key] = cached
        return cached

    def _raise(self, depth: Depth, candidate: Candidate, j: int, l: int) -> np.ndarray:
        """E_j^(l) of a candidate at ``depth``, in the basis at ``depth - l e_j``."""
        i, k, c = candidate
        parent_depth = self._shift(depth, i, -k)
        parent = self.space(parent_depth)
        if j != i:
            moved = parent.raising[(j, l)][:, c]
            return (self._lower(self._shift(parent_depth, j, -l), i, k) @ moved) % self.p

        target = self.space(self._shift(depth, j, -l))
        result = np.zeros(target.dim, dtype=np.int64)
        h = self._coweight(parent_depth, i)
        for t in range(min(l, k) + 1):
            coefficient = generalized_binomial(h + l - k, t) % self.p
            up = l - t
            if not coefficient or up > parent_depth[i]:
                continue
            if up:
                vector = parent.raising[(i, up)][:, c]
            else:
                vector = np.zeros(parent.dim, dtype=np.int64)
                vector[c] = 1
            if k - t:
                vector = self._lower(self._shift(parent_depth, i, -up), i, k - t) @ vector
            result = (result + coefficient * vector) % self.p
        return result


def weight_multiplicity(datum: RootDatum, weight: Sequence[int], mu: Sequence[int], p: int) -> int:
    """dim L(weight)_mu in characteristic p."""
    return ContravariantForm(datum, weight, p).dimension(mu)
