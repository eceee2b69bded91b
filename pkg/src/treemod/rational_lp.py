"""Exact rational linear algebra and a small dense simplex solver.

Everything here works over `fractions.Fraction`. The simplex is a
two-phase dense tableau with Bland's rule, so it terminates, is
deterministic, and always lands on a vertex of the feasible region.
It is meant for the small systems produced by constraint generation,
conic feasibility and pmf membership tests, not for large LPs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def exact_solve(A: list[list[Fraction]], b: list[Fraction]):
    """One exact solution of ``A x = b`` with free variables set to 0.

    Returns the solution as a list, or None when the system is
    inconsistent. ``A`` may be rectangular.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = ONE / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(m):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if M[r][n] != 0:
            return None
    x = [ZERO] * n
    for r, c in pivots:
        x[c] = M[r][n]
    return x


def matrix_rank(A: list[list[Fraction]]) -> int:
    m = len(A)
    if m == 0:
        return 0
    n = len(A[0])
    M = [[Fraction(x) for x in row] for row in A]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = ONE / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(m):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[rank])]
        rank += 1
        if rank == m:
            break
    return rank


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    objective: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    inv = ONE / T[row][col]
    T[row] = [x * inv for x in T[row]]
    piv_row = T[row]
    for r in range(len(T)):
        if r != row and T[r][col] != 0:
            f = T[r][col]
            T[r] = [a - f * c for a, c in zip(T[r], piv_row)]
    basis[row] = col


def _bland_iterate(T: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Run simplex pivots on tableau T (last row = costs) until optimal."""
    m = len(T) - 1
    while True:
        cost = T[m]
        col = next((j for j in range(ncols) if cost[j] < 0), None)
        if col is None:
            return "optimal"
        best_row = None
        best_ratio = None
        for r in range(m):
            a = T[r][col]
            if a > 0:
                ratio = T[r][ncols] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[best_row])):
                    best_ratio = ratio
                    best_row = r
        if best_row is None:
            return "unbounded"
        _pivot(T, basis, best_row, col)


def simplex_min(c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]) -> LpResult:
    """Minimize ``c^T x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    m = len(A)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # Phase 1: artificial variable per row; reduced costs of the
    # artificial objective are the negated column sums.
    ncols = n + m
    T = [A[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    cost = [ZERO] * (ncols + 1)
    for j in range(n):
        cost[j] = -sum((T[i][j] for i in range(m)), ZERO)
    cost[ncols] = -sum(b, ZERO)
    T.append(cost)
    basis = [n + i for i in range(m)]
    status = _bland_iterate(T, basis, ncols)
    if status != "optimal" or T[m][ncols] != 0:
        return LpResult("infeasible")

    # Drive artificials out of the basis; drop redundant rows.
    keep_rows = []
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is None:
                continue  # redundant constraint
            _pivot(T, basis, r, col)
        keep_rows.append(r)

    # Phase 2 tableau: original columns only.
    rows = [[T[r][j] for j in range(n)] + [T[r][ncols]] for r in keep_rows]
    basis2 = [basis[r] for r in keep_rows]
    m2 = len(rows)
    cost = [Fraction(x) for x in c] + [ZERO]
    for r in range(m2):
        bj = basis2[r]
        if cost[bj] != 0:
            f = cost[bj]
            cost = [a - f * x for a, x in zip(cost, rows[r])]
    rows.append(cost)
    status = _bland_iterate(rows, basis2, n)
    if status == "unbounded":
        return LpResult("unbounded")
    x = [ZERO] * n
    for r in range(m2):
        x[basis2[r]] = rows[r][n]
    obj = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    return LpResult("optimal", x, obj)


def solve_eq_nonneg(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """A nonnegative exact solution of ``A x = b``, or None (phase 1 only)."""
    n = len(A[0]) if A else 0
    res = simplex_min([ZERO] * n, A, b)
    return res.x if res.status == "optimal" else None
