"""Simplicial homology with coefficients in the two-element field.

Matrices are bit-packed: each column is a Python ``int`` whose bit ``r`` is
the entry in row ``r``.  No orientation signs are needed mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .simplicial import Complex


@dataclass
class BoundaryMatrices:
    """``columns[k]`` holds the boundary map from k-faces to (k-1)-faces, k >= 1."""

    f_vector: tuple[int, ...]
    columns: dict[int, list[int]]

    def shape(self, k: int) -> tuple[int, int]:
        return self.f_vector[k - 1], self.f_vector[k]

    def dense(self, k: int) -> list[list[int]]:
        rows, cols = self.shape(k)
        return [[self.columns[k][c] >> r & 1 for c in range(cols)] for r in range(rows)]

    def to_text(self) -> str:
        out = []
        for k in sorted(self.columns):
            out.append(f"d{k}: {self.shape(k)[0]}x{self.shape(k)[1]}")
            out.extend("".join(map(str, row)) for row in self.dense(k))
        return "\n".join(out) + "\n"


def boundary_matrices(k: Complex, ordered: bool = True) -> BoundaryMatrices:
    """Boundary matrices indexed by the complex's face order.

    ``ordered=False`` uses hash-set iteration order instead, which is enough
    for ranks and skips the sort.
    """
    fv = k.f_vector
    layer = k.faces if ordered else (lambda d: k._face_sets[d])
    columns: dict[int, list[int]] = {}
    index = {face: i for i, face in enumerate(layer(0))} if fv else {}
    for dim in range(1, len(fv)):
        faces = layer(dim)
        cols = []
        for face in faces:
            col = 0
            for v in face:
                col |= 1 << index[face - {v}]
            cols.append(col)
        columns[dim] = cols
        index = {face: i for i, face in enumerate(faces)}
    return BoundaryMatrices(fv, columns)


def _reduce(columns: Iterable[int], skip: frozenset | set = frozenset()) -> dict[int, int]:
    """Eliminate on leading bits; returns the pivot columns keyed by leading row."""
    pivots: dict[int, int] = {}
    for i, col in enumerate(columns):
        if i in skip:
            continue
        while col:
            lead = col.bit_length() - 1
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = col
                break
            col ^= pivot
    return pivots


def gf2_rank(columns: Iterable[int]) -> int:
    """Rank of a bit-packed matrix by elimination on leading bits."""
    return len(_reduce(columns))


def rank_dense(rows: Sequence[Sequence[int]]) -> int:
    """Textbook row reduction over GF(2) on a list-of-lists matrix."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                m[r] = [x ^ y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True, eq=False)
class BettiProfile:
    """Betti numbers b_0..b_dim; equality ignores trailing zeros."""

    betti: tuple[int, ...]

    def _trimmed(self) -> tuple[int, ...]:
        b = list(self.betti)
        while b and not b[-1]:
            b.pop()
        return tuple(b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiProfile):
            return NotImplemented
        return self._trimmed() == other._trimmed()

    def __hash__(self) -> int:
        return hash(self._trimmed())

    @property
    def reduced(self) -> tuple[int, ...]:
        if not self.betti:
            return ()
        return (self.betti[0] - 1,) + self.betti[1:]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def __str__(self) -> str:
        return f"b = ({', '.join(map(str, self.betti))})"


def betti_gf2(k: Complex) -> BettiProfile:
    mats = boundary_matrices(k, ordered=False)
    fv = mats.f_vector
    ranks = [0] * (len(fv) + 1)
    # Clearing: if a reduced column of d_{k+1} leads at row i, then
    # d_k(face i) lies in the span of d_k on lower-indexed faces, so column i
    # of d_k contributes nothing to the rank and is skipped.
    cleared: set[int] = set()
    for dim in sorted(mats.columns, reverse=True):
        pivots = _reduce(mats.columns[dim], cleared)
        ranks[dim] = len(pivots)
        cleared = set(pivots)
    return BettiProfile(tuple(fv[d] - ranks[d] - ranks[d + 1] for d in range(len(fv))))


def sphere_profile(d: int) -> BettiProfile:
    """Betti numbers of the d-sphere (S^0 is two points)."""
    if d == 0:
        return BettiProfile((2,))
    return BettiProfile((1,) + (0,) * (d - 1) + (1,))


def homological_connectivity(k: Complex) -> int:
    """Largest c with reduced b_i = 0 for all i <= c.

    This is a PROXY for topological connectivity: vanishing homology is
    necessary for c-connectedness, not sufficient.  Returns -1 for an empty or
    disconnected complex and ``dim K`` when every reduced group vanishes.
    """
    if not k.facets:
        return -1
    reduced = betti_gf2(k).reduced
    conn = -1
    for b in reduced:
        if b:
            break
        conn += 1
    return min(conn, k.dimension)
