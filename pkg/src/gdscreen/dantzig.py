"""The Dantzig selector solved as a linear program.

For a centered/normalized model matrix the estimator minimizes ||beta||_1
subject to ||X^T(y - X beta)||_inf <= delta.  With the split
beta = beta+ - beta- this is an LP in 2p nonnegative variables with 2p
inequality rows.  Because the whole procedure evaluates a grid of delta
values, the grid is solved in one descending sweep: at delta_max the slack
basis is optimal (beta = 0), and each smaller delta only perturbs the
right-hand side, so a dual simplex restarts from the previous optimal basis.
Solutions are vertices, hence sparse with exact zeros, which the downstream
clustering step relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError
from .model import ModelMatrix
from .simplex import ITERATION_LIMIT, OPTIMAL, LpResult, lp_solve

PIVOT_TOL = 1e-9
ZERO_SNAP = 1e-9
FEAS_SLACK = 1e-7
GRID_POINTS = 12  # endpoints 0 and delta_max are excluded from the 10 used


@dataclass(frozen=True)
class DantzigSolution:
    beta: np.ndarray
    delta: float
    lp_status: str
    pivots: int = 0

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.beta)


def delta_grid(matrix: ModelMatrix) -> np.ndarray:
    """The 10 interior points of 12 equidistant values on [0, ||X^T y||_inf]."""
    dmax = float(np.abs(matrix.columns.T @ matrix.y).max())
    if dmax <= 1e-12:
        raise ValidationError("constant response: ||X^T y||_inf is zero")
    return dmax * np.arange(1, GRID_POINTS - 1) / (GRID_POINTS - 1)


def orthogonal_dantzig_oracle(matrix: ModelMatrix, delta: float) -> np.ndarray:
    """Closed-form soft-threshold solution, valid only when X^T X = (n-1) I."""
    X = matrix.columns
    n = matrix.n
    gram = X.T @ X
    if np.abs(gram - (n - 1.0) * np.eye(matrix.p)).max() > 1e-8:
        raise ValidationError("model matrix columns are not orthogonal")
    b = X.T @ matrix.y
    return np.sign(b) * np.maximum(np.abs(b) - delta, 0.0) / (n - 1.0)


def dantzig_select(matrix: ModelMatrix, delta: float) -> DantzigSolution:
    """Solve the selector at a single delta (>= 0)."""
    return dantzig_path(matrix, [delta])[0]


def dantzig_path(matrix: ModelMatrix, deltas) -> list[DantzigSolution]:
    """Solve the selector at each delta, sharing one warm-started sweep.

    Results are returned in the order the deltas were given; internally the
    values are visited largest-first.  Each solution is verified against the
    feasibility invariant and re-solved from a cold start if the warm basis
    has drifted.
    """
    deltas = [float(d) for d in deltas]
    if any(d < 0 for d in deltas):
        raise ValidationError("delta must be nonnegative")
    if matrix.degenerate:
        raise ValidationError("model matrix has degenerate columns; drop them first")

    sweep = _ParametricSweep(matrix)
    order = sorted(range(len(deltas)), key=lambda k: -deltas[k])
    out: list[DantzigSolution | None] = [None] * len(deltas)
    for k in order:
        out[k] = sweep.solve(deltas[k])
    return out  # type: ignore[return-value]


class _ParametricSweep:
    """Dual-simplex tableau for min 1.x, A x <= b0 + delta, x >= 0.

    A = [[G, -G], [-G, G]] with G = X^T X, b0 = [X^T y; -X^T y].  The two
    right-hand-side columns (constant and delta coefficient) ride along in
    the tableau so every pivot keeps the whole delta family updated.
    """

    def __init__(self, matrix: ModelMatrix):
        X = matrix.columns
        self.p = p = matrix.p
        self.g = g = X.T @ matrix.y
        G = X.T @ X
        m = 2 * p  # constraint rows; also the number of structural variables

        width = 4 * p + 2  # vars, slacks, rhs-constant, rhs-delta
        T = np.zeros((m + 1, width))
        T[:p, :p] = G
        T[:p, p : 2 * p] = -G
        T[p : 2 * p, :p] = -G
        T[p : 2 * p, p : 2 * p] = G
        T[:m, 2 * p : 4 * p] = np.eye(m)
        T[:p, 4 * p] = g
        T[p : 2 * p, 4 * p] = -g
        T[:m, 4 * p + 1] = 1.0
        T[m, : 2 * p] = 1.0  # reduced costs at the slack basis
        self.T = T
        self.basis = np.arange(2 * p, 4 * p)
        self.G = G
        self.matrix = matrix
        self.broken = False
        self.max_pivots = 50 * m

    def solve(self, delta: float) -> DantzigSolution:
        if self.broken:
            return self._cold(delta)
        T, basis = self.T, self.basis
        m = 2 * self.p
        ncols = 4 * self.p
        pivots = 0
        z = T[m, :ncols]
        while True:
            rhs = T[:m, ncols] + delta * T[:m, ncols + 1]
            r = int(np.argmin(rhs))
            if rhs[r] >= -PIVOT_TOL * (1.0 + abs(delta)):
                break
            if pivots >= self.max_pivots:
                self.broken = True
                return self._cold(delta)
            row = T[r, :ncols]
            eligible = row < -PIVOT_TOL
            if not eligible.any():
                self.broken = True
                return self._cold(delta)
            ratios = np.where(eligible, z / np.where(eligible, -row, 1.0), np.inf)
            j = int(np.argmin(ratios))
            self._pivot(r, j)
            basis[r] = j
            pivots += 1

        rhs = T[:m, ncols] + delta * T[:m, ncols + 1]
        x = np.zeros(ncols)
        x[basis] = rhs
        beta = x[: self.p] - x[self.p : 2 * self.p]
        beta[np.abs(beta) < ZERO_SNAP] = 0.0
        if self._feasible(beta, delta):
            return DantzigSolution(beta=beta, delta=delta, lp_status=OPTIMAL, pivots=pivots)
        self.broken = True
        return self._cold(delta)

    def _pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= col[:, None] * T[r]
        T[:, j] = 0.0
        T[r, j] = 1.0

    def _feasible(self, beta: np.ndarray, delta: float) -> bool:
        resid = self.g - self.G @ beta
        return float(np.abs(resid).max()) <= delta + FEAS_SLACK

    def _cold(self, delta: float) -> DantzigSolution:
        """Solve this delta from scratch with the two-phase primal simplex."""
        p = self.p
        m = 2 * p
        A = self._constraints()
        b = np.concatenate([self.g + delta, delta - self.g])
        c = np.ones(2 * p)
        res: LpResult = lp_solve(c, A, b, max_iter=50 * m)
        if res.status == OPTIMAL:
            beta = res.x[:p] - res.x[p : 2 * p]
            beta[np.abs(beta) < ZERO_SNAP] = 0.0
            if self._feasible(beta, delta):
                return DantzigSolution(beta, delta, OPTIMAL, res.iterations)
            raise NumericalError("Dantzig LP solution violates its own constraint")
        if res.status == ITERATION_LIMIT:
            beta = res.x[:p] - res.x[p : 2 * p]
            if not self._feasible(beta, delta):
                beta = self._least_squares_point()
            beta = beta.copy()
            beta[np.abs(beta) < ZERO_SNAP] = 0.0
            return DantzigSolution(beta, delta, ITERATION_LIMIT, res.iterations)
        raise NumericalError(f"Dantzig LP unexpectedly {res.status}")

    def _constraints(self) -> np.ndarray:
        G = self.G
        return np.block([[G, -G], [-G, G]])

    def _least_squares_point(self) -> np.ndarray:
        """Always-feasible fallback: a least-squares solution has zero
        residual correlation, hence satisfies every delta >= 0."""
        beta, *_ = np.linalg.lstsq(self.matrix.columns, self.matrix.y, rcond=None)
        return beta
