"""t-copula over KDE marginals for feature-weight distributions.

Fitting follows the standard semiparametric recipe: Gaussian-kernel KDE
marginals map each dimension to the copula scale, the correlation matrix
comes from pairwise Kendall's tau through rho = sin(pi tau / 2), and the
degrees of freedom are picked by a one-dimensional log-likelihood search
over a small grid (full ML over nu is ill-conditioned at the few hundred
observations available here).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, stdtr, stdtrit

from .kde import GaussianKde

DOF_GRID = (3.0, 5.0, 8.0, 12.0, 20.0, 30.0)
_UNIT_CLIP = 1e-9


@dataclass
class CopulaModel:
    marginals: list            # GaussianKde per dimension
    correlation: np.ndarray    # symmetric PD, unit diagonal
    dof: float                 # degrees of freedom, > 2
    regularized: bool = False  # True when the tau matrix needed diagonal loading
    loglik: float = field(default=float("nan"), repr=False)

    @property
    def dim(self):
        return len(self.marginals)


def kendall_tau_matrix(X):
    """Pairwise Kendall's tau (tau-a) of the columns of X."""
    X = np.asarray(X, dtype=float)
    n, d = X.shape
    tau = np.eye(d)
    iu, ju = np.triu_indices(n, k=1)
    for a in range(d):
        da = X[iu, a] - X[ju, a]
        for b in range(a + 1, d):
            db = X[iu, b] - X[ju, b]
            s = np.sign(da) * np.sign(db)
            t = float(np.sum(s)) / s.size
            tau[a, b] = tau[b, a] = t
    return tau


def _make_pd(R):
    """Diagonal loading until the smallest eigenvalue clears 1e-6."""
    R = R.copy()
    regularized = False
    for _ in range(60):
        w = np.linalg.eigvalsh(R)
        if w.min() > 1e-6:
            break
        regularized = True
        R = R + (1e-6 + abs(w.min())) * np.eye(R.shape[0])
        dscale = np.sqrt(np.diag(R))
        R = R / np.outer(dscale, dscale)
    return R, regularized


def _t_logpdf(z, dof):
    return (gammaln((dof + 1) / 2) - gammaln(dof / 2) - 0.5 * math.log(dof * math.pi)
            - (dof + 1) / 2 * np.log1p(z * z / dof))


def _mvt_logpdf(Z, R, dof):
    d = R.shape[0]
    L = np.linalg.cholesky(R)
    logdet = 2.0 * float(np.sum(np.log(np.diag(L))))
    sol = np.linalg.solve(L, Z.T)
    quad = np.sum(sol * sol, axis=0)
    return (gammaln((dof + d) / 2) - gammaln(dof / 2) - d / 2 * math.log(dof * math.pi)
            - 0.5 * logdet - (dof + d) / 2 * np.log1p(quad / dof))


def _copula_loglik(U, R, dof):
    Z = stdtrit(dof, U)
    joint = _mvt_logpdf(Z, R, dof)
    marg = np.sum(_t_logpdf(Z, dof), axis=1)
    return float(np.sum(joint - marg))


def copula_fit(thetas):
    """Fit a t-copula with KDE marginals to row-stacked weight vectors."""
    X = np.atleast_2d(np.asarray(thetas, dtype=float))
    n, d = X.shape
    if n < 10:
        raise ValueError("need at least 10 vectors")
    marginals = [GaussianKde(X[:, j]) for j in range(d)]
    U = np.column_stack([
        np.clip([marginals[j].cdf(x) for x in X[:, j]], _UNIT_CLIP, 1 - _UNIT_CLIP)
        for j in range(d)
    ])
    tau = kendall_tau_matrix(X)
    R = np.sin(0.5 * math.pi * tau)
    np.fill_diagonal(R, 1.0)
    R, regularized = _make_pd(R)
    best_dof, best_ll = DOF_GRID[0], -np.inf
    for dof in DOF_GRID:
        ll = _copula_loglik(U, R, dof)
        if ll > best_ll:
            best_ll, best_dof = ll, dof
    return CopulaModel(marginals=marginals, correlation=R, dof=best_dof,
                       regularized=regularized, loglik=best_ll)


def copula_sample(model, rng, size=None):
    """Draw weight vectors: multivariate t -> t CDF -> inverse KDE marginals."""
    d = model.dim
    m = 1 if size is None else int(size)
    L = np.linalg.cholesky(model.correlation)
    z = rng.standard_normal((m, d)) @ L.T
    w = rng.chisquare(model.dof, size=m) / model.dof
    t = z / np.sqrt(w)[:, None]
    U = np.clip(stdtr(model.dof, t), _UNIT_CLIP, 1 - _UNIT_CLIP)
    out = np.empty((m, d))
    for j in range(d):
        out[:, j] = [model.marginals[j].inv_cdf(u) for u in U[:, j]]
    return out[0] if size is None else out
