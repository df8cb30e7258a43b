"""Sparse exact Gaussian elimination over Q(k, c, lambda, mu).

Matrices are dicts ``row -> {col -> RationalFunction}`` with arbitrary
hashable row and column keys.  Pivots are chosen Markowitz-style, preferring
constant entries so that fill-in stays polynomial whenever possible.
"""

from __future__ import annotations

from typing import Hashable, Mapping

from .scalars import ONE, ZERO, RationalFunction

Matrix = dict  # dict[Hashable, dict[Hashable, RationalFunction]]


class SingularMatrixError(ArithmeticError):
    pass


def _eliminate(rows: dict, pivot_cols: list):
    """In-place Gauss-Jordan on ``rows`` over the columns in ``pivot_cols``.

    Returns the list of (row, col, pivot value) in elimination order.
    """
    col_index: dict = {}
    for r, row in rows.items():
        for c in row:
            col_index.setdefault(c, set()).add(r)
    rrank = {r: i for i, r in enumerate(rows)}
    crank = {c: i for i, c in enumerate(pivot_cols)}
    remaining_rows = set(rows)
    remaining_cols = set(pivot_cols)
    pivots = []
    while remaining_cols:
        best = None
        for c in remaining_cols:
            rs = col_index.get(c, set()) & remaining_rows
            if not rs:
                continue
            for r in rs:
                x = rows[r][c]
                key = (not x.is_constant(), (len(rows[r]) - 1) * (len(rs) - 1), rrank[r], crank[c])
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            break
        _, r, c = best
        prow = rows[r]
        p = prow[c]
        inv = ONE / p
        prow = {cc: x * inv for cc, x in prow.items()}
        rows[r] = prow
        for other in list(col_index.get(c, set())):
            if other == r:
                continue
            orow = rows[other]
            f = orow.get(c)
            if f is None:
                continue
            for cc, x in prow.items():
                new = orow.get(cc, ZERO) - f * x
                if new.is_zero():
                    if cc in orow:
                        del orow[cc]
                        col_index[cc].discard(other)
                else:
                    if cc not in orow:
                        col_index.setdefault(cc, set()).add(other)
                    orow[cc] = new
        remaining_rows.discard(r)
        remaining_cols.discard(c)
        pivots.append((r, c, p))
    return pivots


def _permutation_sign(pairs, row_order, col_order) -> int:
    rpos = {r: i for i, r in enumerate(row_order)}
    cpos = {c: i for i, c in enumerate(col_order)}
    perm = [0] * len(pairs)
    for r, c in pairs:
        perm[rpos[r]] = cpos[c]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(matrix: Mapping, row_order, col_order) -> RationalFunction:
    """Determinant of a square sparse matrix with the given row/column orders."""
    if len(row_order) != len(col_order):
        raise ValueError(f"matrix is not square: {len(row_order)} x {len(col_order)}")
    if not row_order:
        return ONE
    rows = {r: dict(matrix.get(r, {})) for r in row_order}
    pivots = _eliminate(rows, list(col_order))
    if len(pivots) < len(row_order):
        return ZERO
    det = ONE
    for _, _, p in pivots:
        det = det * p
    return det * _permutation_sign([(r, c) for r, c, _ in pivots], row_order, col_order)


def solve(matrix: Mapping, rhs: Mapping[Hashable, RationalFunction], cols) -> dict:
    """Solve ``matrix @ x = rhs`` for a nonsingular square system; returns ``{col: value}``."""
    return solve_many(matrix, [rhs], cols)[0]


def solve_many(matrix: Mapping, rhs_list, cols) -> list[dict]:
    """One elimination, several right-hand sides."""
    keys = [("__rhs__", i) for i in range(len(rhs_list))]
    rows = {r: dict(row) for r, row in matrix.items()}
    for key, rhs in zip(keys, rhs_list):
        for r, x in rhs.items():
            rows.setdefault(r, {})[key] = x
    pivots = _eliminate(rows, list(cols))
    if len(pivots) < len(cols):
        raise SingularMatrixError("system is singular")
    leftovers = set(rows) - {r for r, _, _ in pivots}
    for r in leftovers:
        if any(key in rows[r] for key in keys):
            raise SingularMatrixError("right-hand side is outside the column span")
    out = []
    for key in keys:
        solution = {}
        for r, c, _ in pivots:
            x = rows[r].get(key)
            if x is not None and not x.is_zero():
                solution[c] = x
        out.append(solution)
    return out
