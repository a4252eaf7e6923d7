"""Dense tableau simplex for small/medium linear programs.

Solves  min c^T x  subject to  A x <= b,  x >= 0  in two phases.  The
entering rule is Dantzig's (most negative reduced cost) until a run of
degenerate pivots is detected, after which Bland's least-index rule takes
over, which guarantees termination.  Returned solutions are basic, so
optimal vertices carry exact zeros in the nonbasic coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NumericalError

PIVOT_TOL = 1e-9
COST_TOL = 1e-9
# consecutive non-improving pivots tolerated before switching to Bland's rule
STALL_LIMIT = 64

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration-limit"


@dataclass
class LpResult:
    status: str
    x: np.ndarray
    objective: float
    iterations: int


def lp_solve(c, A, b, max_iter: int | None = None) -> LpResult:
    """Minimize c.x over {x >= 0 : Ax <= b}; returns an optimal basic solution.

    status is one of "optimal", "infeasible", "unbounded" or
    "iteration-limit"; in the last case ``x`` is the best feasible point
    found (phase-2 iterates are always feasible).
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    m, n = A.shape
    if b.shape[0] != m or c.shape[0] != n:
        raise NumericalError("inconsistent LP dimensions")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
        raise NumericalError("LP data must be finite")
    if max_iter is None:
        max_iter = 50 * (n + m)

    neg = b < 0
    n_art = int(neg.sum())
    width = n + m + n_art + 1

    # rows: m constraints then the cost row; columns: x | slack | artificial | rhs
    T = np.zeros((m + 1, width))
    T[:m, :n] = np.where(neg[:, None], -A, A)
    T[:m, n : n + m] = np.diag(np.where(neg, -1.0, 1.0))
    T[:m, -1] = np.abs(b)
    basis = np.arange(n, n + m)
    if n_art:
        art_cols = n + m + np.arange(n_art)
        rows = np.flatnonzero(neg)
        T[rows, art_cols] = 1.0
        basis[rows] = art_cols

        # phase 1: drive sum of artificials to zero
        T[m, n + m : n + m + n_art] = 1.0
        for r in rows:
            T[m] -= T[r]
        status, it1 = _iterate(T, basis, max_iter, blocked=())
        if status == ITERATION_LIMIT:
            return LpResult(ITERATION_LIMIT, np.zeros(n), float("nan"), it1)
        if T[m, -1] < -1e-7 * (1.0 + np.abs(b).max(initial=0.0)):
            return LpResult(INFEASIBLE, np.zeros(n), float("nan"), it1)
        _evict_artificials(T, basis, n + m)
    else:
        it1 = 0

    # phase 2: original objective, reduced against the current basis
    T[m, :] = 0.0
    T[m, :n] = c
    for r in range(m):
        if basis[r] < n and T[m, basis[r]] != 0.0:
            T[m] -= T[m, basis[r]] * T[r]
    blocked = tuple(range(n + m, n + m + n_art))
    status, it2 = _iterate(T, basis, max_iter - it1, blocked=blocked)

    x = np.zeros(n + m + n_art)
    x[basis] = T[:m, -1]
    x = x[:n]
    objective = float(c @ x)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, x, float("-inf"), it1 + it2)
    return LpResult(status, x, objective, it1 + it2)


def _iterate(T, basis, max_iter, blocked=()) -> tuple[str, int]:
    """Primal simplex pivots on tableau T (last row costs, last column rhs)."""
    m = T.shape[0] - 1
    cols = T.shape[1] - 1
    allowed = np.ones(cols, dtype=bool)
    if blocked:
        allowed[list(blocked)] = False
    bland = False
    stall = 0
    it = 0
    while True:
        if it >= max_iter:
            return ITERATION_LIMIT, it
        z = T[m, :cols]
        if bland:
            candidates = np.flatnonzero((z < -COST_TOL) & allowed)
            if candidates.size == 0:
                return OPTIMAL, it
            j = int(candidates[0])
        else:
            masked = np.where(allowed, z, 0.0)
            j = int(np.argmin(masked))
            if masked[j] >= -COST_TOL:
                return OPTIMAL, it
        col = T[:m, j]
        positive = col > PIVOT_TOL
        if not positive.any():
            return UNBOUNDED, it
        ratios = np.full(m, np.inf)
        ratios[positive] = T[:m, -1][positive] / col[positive]
        best = ratios.min()
        tied = np.flatnonzero(ratios <= best + 1e-10 * (1.0 + abs(best)))
        # smallest basis index among ties discourages cycling even pre-Bland
        r = int(tied[np.argmin(basis[tied])])
        before = T[m, -1]
        _pivot(T, r, j)
        basis[r] = j
        it += 1
        if not bland:
            # the cost-row rhs carries -objective, so progress increases it
            stall = 0 if T[m, -1] > before + 1e-13 else stall + 1
            if stall > STALL_LIMIT:
                bland = True


def _pivot(T, r, j) -> None:
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    T[:, j] = 0.0
    T[r, j] = 1.0


def _evict_artificials(T, basis, first_art: int) -> None:
    """Pivot leftover zero-level artificials out of the basis where possible."""
    m = T.shape[0] - 1
    for r in range(m):
        if basis[r] >= first_art:
            row = T[r, :first_art]
            nz = np.flatnonzero(np.abs(row) > PIVOT_TOL)
            if nz.size:
                _pivot(T, r, int(nz[0]))
                basis[r] = int(nz[0])
            # otherwise the row is redundant; the artificial stays basic at 0


def enumerate_vertices(c, A, b):
    """Brute-force optimum over basic solutions of {x >= 0 : Ax <= b}.

    Independent oracle for tests: appends slacks, tries every basis of the
    augmented system, keeps the best feasible one.  Exponential; use only
    for tiny instances.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    m, n = A.shape
    aug = np.hstack([A, np.eye(m)])
    cost = np.concatenate([c, np.zeros(m)])
    best = None
    best_x = None
    for cols in combinations(range(n + m), m):
        sub = aug[:, cols]
        if abs(np.linalg.det(sub)) < 1e-10:
            continue
        xb = np.linalg.solve(sub, b)
        if np.any(xb < -1e-9):
            continue
        x = np.zeros(n + m)
        x[list(cols)] = xb
        val = cost @ x
        if best is None or val < best - 1e-12:
            best = val
            best_x = x[:n]
    if best is None:
        return None, None
    return float(best), best_x
