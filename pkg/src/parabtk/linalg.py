"""Exact dense linear algebra over the configured base fields.

Matrices are lists of rows; rows are lists of scalars (Fraction or prime
field elements).  Everything is exact — no pivoting thresholds — and the
outputs are canonical: reduced row echelon form with monic pivots, and
nullspace bases indexed by free columns in increasing order.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .fields import FieldConfig

__all__ = ["rref", "rank", "nullspace", "solve"]


def rref(field: FieldConfig, rows: Sequence[Sequence]) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    rank_ = 0
    for col in range(ncols):
        sel = None
        for r in range(rank_, len(mat)):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[rank_], mat[sel] = mat[sel], mat[rank_]
        inv = field.one() / mat[rank_][col]
        mat[rank_] = [c * inv for c in mat[rank_]]
        for r in range(len(mat)):
            if r != rank_ and mat[r][col]:
                c = mat[r][col]
                mat[r] = [a - c * b for a, b in zip(mat[r], mat[rank_])]
        pivots.append(col)
        rank_ += 1
    return mat[:rank_], pivots


def rank(field: FieldConfig, rows: Sequence[Sequence]) -> int:
    return len(rref(field, rows)[0])


def nullspace(field: FieldConfig, rows: Sequence[Sequence], ncols: int) -> List[list]:
    """Canonical basis of {z : M z = 0}, one vector per free column."""
    red, pivots = rref(field, rows)
    zero, one = field.zero(), field.one()
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(field: FieldConfig, rows: Sequence[Sequence], rhs: Sequence):
    """One solution of M z = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    red, pivots = rref(field, aug)
    zero = field.zero()
    sol = [zero] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        sol[pc] = red[r][ncols]
    return sol
