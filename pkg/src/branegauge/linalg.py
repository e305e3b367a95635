"""Exact linear algebra over Q.

Vectors are sparse dicts {row_index: Fraction}; matrices are lists of such
column vectors.  Elimination pivots on the maximum row index present, so each
reduction step strictly lowers the leading index and terminates without any
pivoting heuristics.  Everything is deterministic: results depend only on the
order columns are supplied.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

SparseVec = dict[int, Fraction]


def vec_axpy(target: SparseVec, coeff: Fraction, source: SparseVec) -> None:
    """target += coeff * source, in place, dropping zeros."""
    if not coeff:
        return
    for i, v in source.items():
        s = target.get(i, _ZERO) + coeff * v
        if s:
            target[i] = s
        else:
            target.pop(i, None)


_ZERO = Fraction(0)


class SpanTracker:
    """Incremental echelon basis of a span, with membership coordinates.

    Columns are inserted one at a time.  `insert` returns None if the column
    enlarged the span, else the coefficients expressing it over the previously
    inserted columns (indexed by insertion order).  Pivot on max row index.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[SparseVec, SparseVec]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: SparseVec) -> tuple[SparseVec, SparseVec]:
        combo: SparseVec = {}
        while vec:
            lead = max(vec)
            hit = self.pivots.get(lead)
            if hit is None:
                return vec, combo
            pvec, pcombo = hit
            c = vec[lead]  # pivot vectors are normalized to lead coefficient 1
            vec_axpy(vec, -c, pvec)
            vec_axpy(combo, c, pcombo)
        return vec, combo

    def residual(self, column: SparseVec) -> SparseVec:
        """Remainder of column modulo the current span (column not inserted)."""
        vec, _ = self._reduce(dict(column))
        return vec

    def insert(self, column: SparseVec) -> SparseVec | None:
        """Add a column; None if independent, else its coordinates in the span."""
        vec, combo = self._reduce(dict(column))
        idx = self.count
        self.count += 1
        if not vec:
            return combo
        lead = max(vec)
        inv = 1 / vec[lead]
        nvec = {i: inv * v for i, v in vec.items()}
        ncombo = {i: -inv * v for i, v in combo.items()}
        ncombo[idx] = Fraction(inv)
        # stored combo satisfies: pivot_vec = sum ncombo[j] * inserted_j
        self.pivots[lead] = (nvec, ncombo)
        return None

    def coordinates(self, column: SparseVec) -> SparseVec | None:
        """Coefficients over inserted columns if in the span, else None."""
        vec, combo = self._reduce(dict(column))
        if vec:
            return None
        return combo


def sparse_rank(columns: Iterable[SparseVec]) -> int:
    tracker = SpanTracker()
    for col in columns:
        tracker.insert(col)
    return tracker.rank


def nullspace(columns: list[SparseVec]) -> list[SparseVec]:
    """Basis of {a : sum a_j col_j = 0}, keyed by column index."""
    tracker = SpanTracker()
    out: list[SparseVec] = []
    for j, col in enumerate(columns):
        combo = tracker.insert(col)
        if combo is not None:
            rel = {k: v for k, v in combo.items()}
            rel[j] = Fraction(-1)
            out.append({k: -v for k, v in rel.items()})  # col_j - sum combo = 0
    return out


def solve_in_span(columns: list[SparseVec], target: SparseVec) -> SparseVec | None:
    """Coefficients a with sum a_j col_j = target, or None if unsolvable."""
    tracker = SpanTracker()
    for col in columns:
        tracker.insert(col)
    return tracker.coordinates(target)
