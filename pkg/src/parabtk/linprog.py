"""Exact linear programming over the rationals.

A small dense two-phase simplex with Bland's anticycling rule, working
entirely in :class:`fractions.Fraction`.  It solves

    maximize    c·x
    subject to  A x ≤ b,   x ≥ 0

and reports one of ``"optimal"``, ``"infeasible"`` or ``"unbounded"``
together with the optimizer and the optimal value.  Problem sizes in this
package are tiny (≤ ~40 constraints, ≤ ~10 variables), so no sparsity or
revised-simplex machinery is warranted; exactness is the point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

__all__ = ["maximize"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tab: List[List[Fraction]], basis: List[int], row: int, col: int):
    piv = tab[row][col]
    inv = _ONE / piv
    tab[row] = [v * inv for v in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col]:
            f = tab[r][col]
            tab[r] = [a - f * b for a, b in zip(tab[r], tab[row])]
    basis[row] = col


def _simplex(tab: List[List[Fraction]], basis: List[int], ncols: int) -> str:
    """Run phase iterations on a tableau whose last row is the objective.

    The objective row stores reduced costs for a MAXIMIZATION written as
    z - c·x = 0; entering columns are those with negative reduced cost.
    Bland's rule (smallest index) guarantees termination.
    """
    m = len(tab) - 1
    while True:
        obj = tab[m]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return "optimal"
        best_row = None
        best_ratio: Optional[Fraction] = None
        for r in range(m):
            if tab[r][col] > 0:
                ratio = tab[r][-1] / tab[r][col]
                if best_ratio is None or ratio < best_ratio or \
                        (ratio == best_ratio and basis[r] > basis[best_row]):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            return "unbounded"
        _pivot(tab, basis, best_row, col)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence
             ) -> Tuple[str, Optional[List[Fraction]], Optional[Fraction]]:
    """Solve max c·x s.t. A x ≤ b, x ≥ 0 exactly.

    Returns (status, x, value); x and value are None unless optimal.
    """
    c = [Fraction(v) for v in c]
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m, n = len(A), len(c)
    for row in A:
        if len(row) != n:
            raise ValueError("constraint row length mismatch")
    if len(b) != m:
        raise ValueError("right-hand side length mismatch")

    # columns: n structural + m slacks + (artificials as needed) + rhs
    art_rows = [r for r in range(m) if b[r] < 0]
    n_art = len(art_rows)
    width = n + m + n_art + 1
    tab: List[List[Fraction]] = []
    basis: List[int] = []
    art_col = {}
    for idx, r in enumerate(art_rows):
        art_col[r] = n + m + idx
    for r in range(m):
        row = [_ZERO] * width
        sign = -1 if b[r] < 0 else 1
        for j in range(n):
            row[j] = sign * A[r][j]
        row[n + r] = Fraction(sign)
        row[-1] = sign * b[r]
        if r in art_col:
            row[art_col[r]] = _ONE
            basis.append(art_col[r])
        else:
            basis.append(n + r)
        tab.append(row)

    if n_art:
        # phase 1: maximize −Σ artificials.  The objective row holds reduced
        # costs z_j − c_j; start from −c (= +1 at artificial columns) and
        # eliminate the artificial basics so their columns read zero.
        obj = [_ZERO] * width
        for r in art_rows:
            obj[art_col[r]] = _ONE
        for r in art_rows:
            obj = [a - v for a, v in zip(obj, tab[r])]
        tab.append(obj)
        status = _simplex(tab, basis, width - 1)
        assert status == "optimal"  # phase-1 objective is bounded by 0
        if tab[-1][-1] != 0:
            return "infeasible", None, None
        tab.pop()
        # drive any artificial still in the basis out of it
        for r in range(m):
            if basis[r] >= n + m:
                col = next((j for j in range(n + m) if tab[r][j]), None)
                if col is None:
                    continue  # redundant row
                _pivot(tab, basis, r, col)
        # drop artificial columns
        tab = [row[:n + m] + [row[-1]] for row in tab]
        width = n + m + 1

    # phase 2
    obj = [_ZERO] * width
    for j in range(n):
        obj[j] = -c[j]
    tab.append(obj)
    # express the objective through the current basis
    for r in range(m):
        j = basis[r]
        if j < width - 1 and tab[-1][j]:
            f = tab[-1][j]
            tab[-1] = [a - f * v for a, v in zip(tab[-1], tab[r])]
    status = _simplex(tab, basis, width - 1)
    if status != "optimal":
        return status, None, None
    x = [_ZERO] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), _ZERO)
    return "optimal", x, value
