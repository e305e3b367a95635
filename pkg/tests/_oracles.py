"""Independent oracles for the test suite.

Everything here is computed with plain dense linear algebra over Fraction
and closed-form counting, never through the engine's Groebner or module
code, so agreement is meaningful.
"""

from __future__ import annotations

import math
from fractions import Fraction


def count_monomials(nv: int, d: int) -> int:
    if d < 0:
        return 0
    return math.comb(d + nv - 1, nv - 1)


def monomial_tuples(nv: int, d: int) -> list:
    """All exponent tuples of total degree d, plain lexicographic recursion."""
    if d < 0:
        return []
    if nv == 1:
        return [(d,)]
    out = []
    for e in range(d + 1):
        for rest in monomial_tuples(nv - 1, d - e):
            out.append((e,) + rest)
    return out


def dict_mul_monomial(poly: dict, mon: tuple) -> dict:
    return {tuple(a + b for a, b in zip(m, mon)): c for m, c in poly.items()}


def poly_degree(poly: dict) -> int:
    degs = {sum(m) for m in poly}
    assert len(degs) == 1, "oracle expects homogeneous input"
    return degs.pop()


def rref_rank(rows: list) -> int:
    """Row reduction over Fraction; mutates a copy."""
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def dense_ideal_member(gens: list, f: dict, nv: int) -> bool:
    """Degreewise membership: f lies in the ideal iff adding it to the span
    of all generator multiples of the same degree does not raise the rank."""
    if not f:
        return True
    d = poly_degree(f)
    basis = monomial_tuples(nv, d)
    index = {m: i for i, m in enumerate(basis)}

    def vec(poly: dict) -> list:
        out = [Fraction(0)] * len(basis)
        for m, c in poly.items():
            out[index[m]] += c
        return out

    rows = []
    for g in gens:
        if not g:
            continue
        dg = poly_degree(g)
        for m in monomial_tuples(nv, d - dg):
            rows.append(vec(dict_mul_monomial(g, m)))
    base = rref_rank(rows) if rows else 0
    return rref_rank(rows + [vec(f)]) == base


def line_bundle_h(n: int, a: int, i: int) -> int:
    """Cohomology dimensions of O(a) on P^n (the classical formulas)."""
    if i == 0:
        return math.comb(a + n, n) if a >= 0 else 0
    if i == n:
        return math.comb(-a - 1, n) if -a - 1 >= n else 0
    return 0


def omega_piece_dim(n: int, d: int) -> int:
    """Graded piece of the cotangent module from the twisted Euler sequence."""
    if d < 1:
        return 0
    return (n + 1) * count_monomials(n + 1, d - 1) - count_monomials(n + 1, d)


def koszul_rank(nv: int, i: int) -> int:
    return math.comb(nv, i)
