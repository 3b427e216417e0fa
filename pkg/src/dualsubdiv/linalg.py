"""Exact Gauss-Jordan elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import Inconsistent


def rref(rows: Sequence[Sequence], rhs: Sequence | None = None):
    """Reduced row echelon form of ``[A | b]``.

    Returns ``(R, pivots)`` where ``R`` is the reduced augmented matrix (a list
    of Fraction rows, zero rows dropped) and ``pivots`` the pivot columns of
    ``A``. A pivot in the augmented column is reported as column ``ncols``.
    """
    ncols = len(rows[0]) if rows else 0
    aug = []
    for r, row in enumerate(rows):
        line = [Fraction(x) for x in row]
        if rhs is not None:
            line.append(Fraction(rhs[r]))
        aug.append(line)
    width = ncols + (1 if rhs is not None else 0)
    pivots = []
    prow = 0
    for col in range(width):
        sel = next((r for r in range(prow, len(aug)) if aug[r][col]), None)
        if sel is None:
            continue
        aug[prow], aug[sel] = aug[sel], aug[prow]
        piv = aug[prow][col]
        if piv != 1:
            aug[prow] = [x / piv for x in aug[prow]]
        prow_vals = aug[prow]
        for r in range(len(aug)):
            if r != prow:
                f = aug[r][col]
                if f:
                    aug[r] = [x - f * y for x, y in zip(aug[r], prow_vals)]
        pivots.append(col)
        prow += 1
        if prow == len(aug):
            break
    return aug[:prow], pivots


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None):
    """Particular solution of ``A x = b`` with free variables set to zero.

    Returns ``(x, nullity)``. Raises :class:`Inconsistent` when no solution
    exists.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [Fraction(0)] * ncols, ncols
    R, pivots = rref(rows, rhs)
    if pivots and pivots[-1] == ncols:
        raise Inconsistent("linear system is inconsistent")
    x = [Fraction(0)] * ncols
    for row, col in zip(R, pivots):
        x[col] = row[ncols]
    return x, ncols - len(pivots)


def solve_unique(rows, rhs):
    x, nullity = solve(rows, rhs)
    if nullity:
        raise Inconsistent(f"linear system is singular (nullity {nullity})")
    return x
