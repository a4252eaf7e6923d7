"""Ordinary least squares on effect subsets, BIC, and coefficient p-values.

Fits are solved through a pivoted QR decomposition (never the normal
equations); rank is judged from the R diagonal with a relative tolerance so
nearly-collinear supersaturated columns are rejected deterministically.
The intercept is absorbed by centering and is not counted in k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import betainc

from .errors import RankDeficiencyError, ValidationError
from .model import Effect, ModelMatrix

RANK_TOL = 1e-10
RSS_FLOOR = 1e-12


@dataclass(frozen=True)
class OlsFit:
    """Least-squares refit of a set of effects on centered data."""

    effects: tuple[Effect, ...]
    coefficients: np.ndarray
    rss: float
    df_resid: int
    n: int
    cov_diag: np.ndarray  # diagonal of (X_S^T X_S)^{-1}, for t statistics

    @property
    def k(self) -> int:
        return len(self.effects)

    def r_squared(self, total_ss: float) -> float:
        if total_ss <= 0.0:
            return 0.0
        return 1.0 - self.rss / total_ss


def ols_fit(matrix: ModelMatrix, effects) -> OlsFit:
    """Fit y on the given effect subset of ``matrix`` by pivoted QR.

    Raises RankDeficiencyError naming a dependent column when the subset is
    numerically rank deficient, and ValidationError when the subset is too
    large for n.
    """
    effects = tuple(effects)
    n = matrix.n
    y = matrix.y
    if len(set(effects)) != len(effects):
        raise ValidationError("duplicate effect in OLS subset")
    if len(effects) > n - 1:
        raise ValidationError(f"subset of {len(effects)} effects is too large for n={n}")
    if not effects:
        return OlsFit(
            effects=(),
            coefficients=np.empty(0),
            rss=float(y @ y),
            df_resid=n,
            n=n,
            cov_diag=np.empty(0),
        )

    X = matrix.submatrix(effects)
    k = X.shape[1]
    q, r, piv = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    tol = RANK_TOL * max(np.max(np.linalg.norm(X, axis=0)), 1.0)
    if np.any(diag <= tol):
        dep = int(piv[int(np.argmax(diag <= tol))])
        raise RankDeficiencyError(
            f"column for effect {effects[dep]} is linearly dependent on the others",
            column=dep,
        )

    qty = q.T @ y
    beta_piv = scipy.linalg.solve_triangular(r, qty, lower=False)
    beta = np.empty(k)
    beta[piv] = beta_piv

    resid = y - X @ beta
    rss = float(resid @ resid)

    rinv = scipy.linalg.solve_triangular(r, np.eye(k), lower=False)
    cov_piv = np.einsum("ij,ij->i", rinv, rinv)  # row norms^2 of R^{-1}
    cov = np.empty(k)
    cov[piv] = cov_piv

    return OlsFit(
        effects=effects,
        coefficients=beta,
        rss=rss,
        df_resid=n - k,
        n=n,
        cov_diag=cov,
    )


def bic(rss: float, n: int, k: int) -> float:
    """n*ln(rss/n) + k*ln(n); rss is floored at 1e-12 so exact fits compare."""
    if rss < 0:
        raise ValidationError("rss must be nonnegative")
    if n <= k or k < 0:
        raise ValidationError(f"need n > k >= 0, got n={n}, k={k}")
    return n * math.log(max(rss, RSS_FLOOR) / n) + k * math.log(n)


def student_t_sf(t: float, df: int) -> float:
    """Upper-tail P(T > t) for Student's t via the regularized incomplete beta."""
    if df < 1:
        raise ValidationError("degrees of freedom must be >= 1")
    t = float(t)
    if t == 0.0:
        return 0.5
    tail = 0.5 * betainc(df / 2.0, 0.5, df / (df + t * t))
    return tail if t > 0 else 1.0 - tail


def coefficient_p_values(fit: OlsFit) -> np.ndarray:
    """Two-sided p-values for each coefficient from its t statistic."""
    if fit.df_resid == 0:
        raise ValidationError("saturated model: no residual degrees of freedom")
    if fit.k == 0:
        return np.empty(0)
    if fit.rss <= 0.0:
        return np.zeros(fit.k)
    sigma2 = fit.rss / fit.df_resid
    se = np.sqrt(sigma2 * fit.cov_diag)
    tstat = fit.coefficients / se
    return np.array([2.0 * student_t_sf(abs(t), fit.df_resid) for t in tstat])
