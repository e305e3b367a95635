"""Cech cohomology over the standard affine charts, on a truncated Laurent
window.

A graded module M presents a sheaf; over the chart intersection U_S the
sections are degree-0 Laurent combinations of the cover generators, with
negative exponents allowed only on the inverted coordinates.  The engine
truncates those exponents at a bound B, forms the incidence differential and
the localized relation span inside the window, and extracts cohomology
dimensions from four ranks:

    h^i = dim W_i - rank [D_i | R_{i+1}] + rank R_{i+1} - rank [D_{i-1} | R_i]

where W_i is the spot window, D the Cech differential and R_p the in-window
relation multiples.  Kernels truncate exactly but images need not, so every
public dimension is recomputed at B + 1 and must agree; disagreement raises
CechStabilizationError rather than reporting an unstable number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import CechStabilizationError, ShapeError
from .linalg import SpanTracker
from .modules import GradedModule
from .polynomials import monomials_of_degree

DEFAULT_CECH_BOUND = 3

_ZERO = Fraction(0)


def chart_subsets(nvars: int, p: int) -> list[tuple[int, ...]]:
    """Sorted (p+1)-subsets of the chart indices, in lexicographic order."""
    return list(combinations(range(nvars), p + 1))


def _exponent_vectors(nvars: int, total: int, inverted, bound: int):
    """All integer vectors a with sum(a) = total, a_i >= -bound on the
    inverted set and a_i >= 0 elsewhere."""
    shift = [bound if i in inverted else 0 for i in range(nvars)]
    lifted = total + sum(shift)
    if lifted < 0:
        return []
    out = []
    for mon in monomials_of_degree(nvars, lifted):
        out.append(tuple(mon[i] - shift[i] for i in range(nvars)))
    return out


@dataclass(frozen=True)
class CechLevel:
    """The degree-0 truncated window at cochain level p.

    Spots are triples (charts, generator row, exponent vector); the index
    assigns each spot its coordinate in the window.
    """

    module: GradedModule
    p: int
    bound: int
    spots: tuple = ()
    index: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return len(self.spots)


def cech_level(m: GradedModule, p: int, bound: int) -> CechLevel:
    nv = m.nvars
    spots = []
    for charts in chart_subsets(nv, p):
        inv = set(charts)
        for r, t in enumerate(m.cover_twists):
            for a in _exponent_vectors(nv, -t, inv, bound):
                spots.append((charts, r, a))
    index = {s: k for k, s in enumerate(spots)}
    return CechLevel(m, p, bound, tuple(spots), index)


def cech_diff_columns(src: CechLevel, tgt: CechLevel) -> list[dict]:
    """One column per source spot: the alternating-sum incidence map.

    Every image spot stays inside the target window because inverting more
    coordinates only relaxes the exponent constraints.
    """
    nv = src.module.nvars
    cols = []
    for (charts, r, a) in src.spots:
        col = {}
        for j in range(nv):
            if j in charts:
                continue
            bigger = tuple(sorted(charts + (j,)))
            sign = (-1) ** bigger.index(j)
            col[tgt.index[(bigger, r, a)]] = Fraction(sign)
        cols.append(col)
    return cols


def cech_relation_columns(lv: CechLevel) -> list[dict]:
    """In-window Laurent multiples of the relation columns at each chart set.

    A multiple x^b * rho stays in the window whenever b does, since relation
    entries only raise exponents.
    """
    m = lv.module
    nv = m.nvars
    rel = m.relations
    cols = []
    for charts in chart_subsets(nv, lv.p):
        inv = set(charts)
        for c, s in enumerate(rel.col_twists):
            column = rel.column(c)
            for b in _exponent_vectors(nv, -s, inv, lv.bound):
                vec = {}
                for r, q in enumerate(column):
                    for mon, coeff in q.items():
                        a = tuple(b[i] + mon[i] for i in range(nv))
                        key = lv.index[(charts, r, a)]
                        cur = vec.get(key, _ZERO) + coeff
                        if cur:
                            vec[key] = cur
                        else:
                            vec.pop(key, None)
                if vec:
                    cols.append(vec)
    return cols


def _joint_rank(*column_groups) -> int:
    tracker = SpanTracker()
    for group in column_groups:
        for col in group:
            tracker.insert(col)
    return tracker.rank


def cech_h_dim_at(m: GradedModule, i: int, bound: int) -> int:
    """Cohomology dimension at a single bound, no stabilization check."""
    nv = m.nvars
    n = nv - 1
    if i < 0 or i > n:
        return 0
    lv_i = cech_level(m, i, bound)
    rel_i = cech_relation_columns(lv_i)
    if i + 1 <= n:
        lv_up = cech_level(m, i + 1, bound)
        rel_up = cech_relation_columns(lv_up)
        d_i = cech_diff_columns(lv_i, lv_up)
    else:
        rel_up, d_i = [], []
    if i >= 1:
        lv_dn = cech_level(m, i - 1, bound)
        d_dn = cech_diff_columns(lv_dn, lv_i)
    else:
        d_dn = []
    return (
        lv_i.dim
        - _joint_rank(d_i, rel_up)
        + _joint_rank(rel_up)
        - _joint_rank(d_dn, rel_i)
    )


def cech_cohomology_dim(m: GradedModule, i: int, bound: int | None = None) -> int:
    """Stabilized Cech cohomology dimension of the sheaf presented by m.

    Computes at the bound and at bound + 1; a mismatch aborts, because the
    truncated relation span can lag behind the true localized one.
    """
    if bound is None:
        bound = DEFAULT_CECH_BOUND
    if bound < 1:
        raise ShapeError("cech bound must be at least 1")
    first = cech_h_dim_at(m, i, bound)
    second = cech_h_dim_at(m, i, bound + 1)
    if first != second:
        raise CechStabilizationError(
            f"h^{i} gave {first} at bound {bound} but {second} at bound "
            f"{bound + 1}; rerun with a larger bound"
        )
    return first


def coboundary_tracker(m: GradedModule, p: int, bound: int):
    """The window at level p together with a tracker spanning coboundaries
    plus in-window relation multiples.  Residuals against it decide class
    membership in h^p."""
    lv = cech_level(m, p, bound)
    tracker = SpanTracker()
    if p >= 1:
        below = cech_level(m, p - 1, bound)
        for col in cech_diff_columns(below, lv):
            tracker.insert(col)
    for col in cech_relation_columns(lv):
        tracker.insert(col)
    return lv, tracker
