"""Exact rational revised simplex.

Solves ``min c.x  s.t.  A x = b, x >= 0`` exactly.  The constraint matrix
is passed column-wise.  Rational data is scaled to integers, and the basis
inverse is kept fraction-free as ``adj(B) / det(B)`` with Bareiss-style exact
division updates, so every pivot is pure integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence as Seq

BLAND = "bland"
DANTZIG = "dantzig"

# consecutive degenerate pivots tolerated under Dantzig pricing before
# switching to Bland's rule for the rest of the solve
DEGENERATE_SWITCH = 25


class LPError(RuntimeError):
    pass


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: list[Fraction] | None = None
    y: list[Fraction] | None = None
    basis: list[int] | None = None
    iterations: int = 0


def _inverse(mat: Seq[Seq]) -> list[list[Fraction]]:
    m = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)]
         for i, row in enumerate(mat)]
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col] != 0), None)
        if piv is None:
            raise LPError("singular basis")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                rc = a[col]
                a[r] = [x - f * y for x, y in zip(a[r], rc)]
    return [row[m:] for row in a]


def _det_adj(mat: Seq[Seq[int]]) -> tuple[int, list[list[int]]]:
    """Determinant and adjugate of an integer matrix."""
    det = _exact_det(mat)
    if det == 0:
        return 0, []
    return det, [[int(x * det) for x in row] for row in _inverse(mat)]


def _exact_det(mat: Seq[Seq[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(row) for row in mat]
    m = len(a)
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, m) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def _run(cols, b, c, basis, allowed, rule):
    """Primal simplex on integer data from a feasible basis.

    Returns (status, basis, det, adj, iterations).
    """
    m = len(b)
    det, adj = _det_adj([[cols[j][i] for j in basis] for i in range(m)])
    if det == 0:
        raise LPError("singular basis")
    sgn = 1 if det > 0 else -1
    X = [sum(adj[i][r] * b[r] for r in range(m) if b[r]) for i in range(m)]
    if any(x * sgn < 0 for x in X):
        raise LPError("initial basis is not primal feasible")
    basic = set(basis)
    degenerate_run = 0
    iterations = 0
    while True:
        cb = [c[j] for j in basis]
        Y = [sum(cb[i] * adj[i][r] for i in range(m) if cb[i]) for r in range(m)]
        nz = [(r, v) for r, v in enumerate(Y) if v]
        entering = None
        best = 0
        for j in allowed:
            if j in basic:
                continue
            col = cols[j]
            red = (c[j] * det - sum(v * col[r] for r, v in nz)) * sgn
            if red < 0:
                if rule == BLAND:
                    entering = j
                    break
                # compare reduced costs scaled by the common positive |det|
                if red < best:
                    best, entering = red, j
        if entering is None:
            return "optimal", basis, det, adj, iterations

        col = cols[entering]
        U = [sum(adj[i][r] * col[r] for r in range(m) if col[r]) for i in range(m)]
        leave = None
        for i in range(m):
            if U[i] * sgn > 0:
                if leave is None:
                    leave = i
                    continue
                # X_i/U_i vs X_l/U_l with U_i, U_l of the same sign as det
                lhs = X[i] * U[leave]
                rhs = X[leave] * U[i]
                if U[i] * U[leave] < 0:  # pragma: no cover - both share sign(det)
                    lhs, rhs = rhs, lhs
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            return "unbounded", basis, det, adj, iterations

        iterations += 1
        if X[leave] == 0:
            degenerate_run += 1
            if rule == DANTZIG and degenerate_run > DEGENERATE_SWITCH:
                rule = BLAND
        else:
            degenerate_run = 0

        ur = U[leave]
        mr = adj[leave]
        xr = X[leave]
        for i in range(m):
            if i == leave:
                continue
            ui = U[i]
            adj[i] = [(a * ur - ui * p) // det for a, p in zip(adj[i], mr)]
            X[i] = (X[i] * ur - ui * xr) // det
        det = ur
        sgn = 1 if det > 0 else -1
        basic.discard(basis[leave])
        basic.add(entering)
        basis[leave] = entering


def _integerize(c, cols, b):
    m = len(b)
    if all(type(x) is int for x in c) and all(type(x) is int for x in b) and \
            all(type(x) is int for col in cols for x in col):
        return list(c), [tuple(col) for col in cols], list(b), [1] * m, 1
    rowscale = []
    for r in range(m):
        dens = [Fraction(col[r]).denominator for col in cols] + [Fraction(b[r]).denominator]
        rowscale.append(math.lcm(*dens))
    icols = [tuple(int(Fraction(col[r]) * rowscale[r]) for r in range(m)) for col in cols]
    ib = [int(Fraction(b[r]) * rowscale[r]) for r in range(m)]
    cscale = math.lcm(*(Fraction(x).denominator for x in c)) if c else 1
    ic = [int(Fraction(x) * cscale) for x in c]
    return ic, icols, ib, rowscale, cscale


def solve(c: Seq, cols: Seq[Seq], b: Seq, basis: list[int] | None = None,
          rule: str = BLAND) -> LPResult:
    """Minimize ``c.x`` subject to ``sum_j x_j cols[j] = b``, ``x >= 0``.

    ``basis`` may name a primal-feasible starting basis (one column per row);
    otherwise a phase-one problem with artificial columns is solved first.
    The returned ``y`` are the simplex multipliers of the optimal basis, an
    optimal solution of the dual ``max b.y  s.t.  y.col_j <= c_j``.
    """
    m = len(b)
    n = len(cols)
    if any(len(col) != m for col in cols):
        raise ValueError("column length does not match number of rows")
    ic, icols, ib, rowscale, cscale = _integerize(list(c), cols, b)

    if basis is None:
        sign = [(-1 if x < 0 else 1) for x in ib]
        fcols = [tuple(s * v for s, v in zip(sign, col)) for col in icols]
        fb = [s * x for s, x in zip(sign, ib)]
        allc = fcols + [tuple(int(i == r) for i in range(m)) for r in range(m)]
        c1 = [0] * n + [1] * m
        status, basis, det, adj, it1 = _run(allc, fb, c1, list(range(n, n + m)), range(n + m), rule)
        X = [sum(adj[i][r] * fb[r] for r in range(m)) for i in range(m)]
        if sum(c1[j] * X[i] for i, j in enumerate(basis)) != 0:
            return LPResult("infeasible", iterations=it1)
        for i in range(m):
            if basis[i] < n:
                continue
            for j in range(n):
                if j in basis:
                    continue
                if sum(adj[i][r] * fcols[j][r] for r in range(m)) != 0:
                    basis[i] = j
                    det, adj = _det_adj([[allc[q][r] for q in basis] for r in range(m)])
                    break
        # a still-basic artificial marks a redundant row; it never re-enters
        status, basis, det, adj, it2 = _run(allc, fb, ic + [0] * m, basis, range(n), rule)
        iterations = it1 + it2
        signs = sign
        bb = fb
    else:
        allc = icols
        status, basis, det, adj, iterations = _run(allc, ib, ic, list(basis), range(n), rule)
        signs = [1] * m
        bb = ib
    if status != "optimal":
        return LPResult(status, iterations=iterations)
    full_c = ic + [0] * (len(allc) - n)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = Fraction(sum(adj[i][r] * bb[r] for r in range(m)), det)
    Y = [sum(full_c[j] * adj[i][r] for i, j in enumerate(basis)) for r in range(m)]
    # undo sign flips, row scaling and objective scaling
    y = [Fraction(Y[r] * signs[r] * rowscale[r], det * cscale) for r in range(m)]
    value = sum((Fraction(cc) * xx for cc, xx in zip(c, x) if xx), Fraction(0))
    return LPResult("optimal", value, x, y, list(basis), iterations)
