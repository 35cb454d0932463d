"""Dense convex quadratic programming by a primal active-set method.

Solves
    min  1/2 x^T H x + g^T x
    s.t. A_eq x  = b_eq
         A_in x <= b_in

with H symmetric positive semidefinite.  Problem sizes in this package are
tiny (tens of variables and constraints), so an exact active-set method with
Cholesky-factored KKT systems is preferred over first-order solvers.

A feasible starting point is obtained from a phase-1 problem that minimizes
the worst constraint violation; a strictly positive optimum there certifies
infeasibility.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from ..errors import Infeasible, NotConverged

_FEAS_TOL = 1e-8
_LAMBDA_TOL = 1e-8


@dataclass
class QpProblem:
    """Data of one convex QP.  Inequality rows read ``a^T x <= b``."""

    H: np.ndarray
    g: np.ndarray
    A_ineq: np.ndarray = None
    b_ineq: np.ndarray = None
    A_eq: np.ndarray = None
    b_eq: np.ndarray = None

    def __post_init__(self):
        self.H = np.atleast_2d(np.asarray(self.H, dtype=float))
        self.g = np.asarray(self.g, dtype=float).ravel()
        n = self.g.size
        if self.H.shape != (n, n):
            raise ValueError(f"H must be {n}x{n}, got {self.H.shape}")
        if not np.all(np.isfinite(self.H)) or not np.all(np.isfinite(self.g)):
            raise ValueError("QP data must be finite")
        if np.max(np.abs(self.H - self.H.T)) > 1e-10 * max(1.0, np.max(np.abs(self.H))):
            raise ValueError("H must be symmetric to 1e-10")
        self.H = 0.5 * (self.H + self.H.T)
        for name in ("A_ineq", "A_eq"):
            A = getattr(self, name)
            b = getattr(self, "b" + name[1:])
            if A is None or len(A) == 0:
                setattr(self, name, np.zeros((0, n)))
                setattr(self, "b" + name[1:], np.zeros(0))
            else:
                A = np.atleast_2d(np.asarray(A, dtype=float))
                b = np.asarray(b, dtype=float).ravel()
                if A.shape != (b.size, n):
                    raise ValueError(f"{name} rows must match bounds and dimension")
                setattr(self, name, A)
                setattr(self, "b" + name[1:], b)

    @property
    def n(self):
        return self.g.size


@dataclass
class QpResult:
    x: np.ndarray
    lam_ineq: np.ndarray
    lam_eq: np.ndarray
    active: list = field(default_factory=list)
    iterations: int = 0


class _Chol:
    """Cholesky factor of H with escalating jitter for semidefinite inputs."""

    def __init__(self, H):
        n = H.shape[0]
        scale = max(1.0, np.trace(H) / max(n, 1))
        jitter = 0.0
        for _ in range(6):
            try:
                self.factor = cho_factor(H + jitter * np.eye(n), lower=True)
                self.jitter = jitter
                return
            except LinAlgError:
                jitter = 1e-12 * scale if jitter == 0.0 else jitter * 100.0
        raise LinAlgError("H not factorizable even with jitter")

    def solve(self, rhs):
        return cho_solve(self.factor, rhs)


def _kkt_point(chol, g, A_w, b_w):
    """Minimizer/multipliers of min 1/2 x^T H x + g^T x s.t. A_w x = b_w."""
    if A_w.shape[0] == 0:
        return -chol.solve(g), np.zeros(0)
    Hinv_At = chol.solve(A_w.T)
    Hinv_g = chol.solve(g)
    S = A_w @ Hinv_At
    rhs = -(A_w @ Hinv_g) - b_w
    try:
        lam = np.linalg.solve(S, rhs)
    except np.linalg.LinAlgError:
        lam = np.linalg.lstsq(S, rhs, rcond=None)[0]
    x = -(Hinv_g + Hinv_At @ lam)
    return x, lam


def _primal_active_set(H, g, A, b, n_eq, x, W0=None, max_iter=None):
    """Core loop.  Rows 0..n_eq-1 of (A, b) are equalities and stay active.

    `x` must be feasible (violations <= ~1e-8).  Returns (x, lam, active, iters).
    """
    n = g.size
    m = b.size
    if max_iter is None:
        max_iter = 50 * (m + n) + 100
    chol = _Chol(H)
    work = list(range(n_eq))
    if W0:
        for j in W0:
            if j >= n_eq and j not in work:
                work.append(j)
    lam_full = np.zeros(m)
    it = 0
    while it < max_iter:
        it += 1
        A_w = A[work] if work else np.zeros((0, n))
        b_w = b[work] if work else np.zeros(0)
        x_sub, lam = _kkt_point(chol, g, A_w, b_w)
        p = x_sub - x
        if np.linalg.norm(p, np.inf) <= 1e-11 * max(1.0, np.linalg.norm(x, np.inf)):
            lam_full[:] = 0.0
            lam_full[work] = lam
            ineq_act = [j for j in work if j >= n_eq]
            if not ineq_act or min(lam_full[j] for j in ineq_act) >= -_LAMBDA_TOL:
                return x, lam_full, work, it
            drop = min(ineq_act, key=lambda j: (lam_full[j], j))
            work.remove(drop)
            continue
        # step length limited by inactive inequality rows
        alpha = 1.0
        block = -1
        for j in range(n_eq, m):
            if j in work:
                continue
            aj_p = A[j] @ p
            if aj_p > 1e-13:
                slack = max(b[j] - A[j] @ x, 0.0)
                a = slack / aj_p
                if a < alpha - 1e-14:
                    alpha = a
                    block = j
        x = x + alpha * p
        if block >= 0:
            work.append(block)
        elif alpha >= 1.0:
            continue
    raise NotConverged("active-set iteration cap", x=x, residual=None)


def _phase1(A, b, n_eq, x0, scale):
    """Feasible point for rows (A, b), or Infeasible.

    Minimizes 1/2 t^2 + 1/2 delta ||x||^2 subject to a_j^T x - t <= b_j and
    t >= 0 over (x, t); the optimum's t is the smallest achievable worst
    violation.
    """
    n = A.shape[1]
    m = b.size
    delta = 1e-8 * scale
    H1 = np.diag(np.concatenate([np.full(n, delta), [scale]]))
    g1 = np.zeros(n + 1)
    # equalities keep their rows (t coefficient 0); inequalities gain -t
    A1 = np.zeros((m + 1, n + 1))
    b1 = np.zeros(m + 1)
    A1[:m, :n] = A
    b1[:m] = b
    A1[n_eq:m, n] = -1.0
    A1[m, n] = -1.0  # t >= 0
    b1[m] = 0.0
    if n_eq:
        x_p = np.linalg.lstsq(A[:n_eq], b[:n_eq], rcond=None)[0]
        if np.linalg.norm(A[:n_eq] @ x_p - b[:n_eq], np.inf) > _FEAS_TOL * 10 * max(1.0, scale):
            raise Infeasible("equality rows inconsistent", x=x_p)
    else:
        x_p = x0 if x0 is not None else np.zeros(n)
    viol = A[n_eq:] @ x_p - b[n_eq:] if m > n_eq else np.zeros(0)
    t0 = max(0.0, float(np.max(viol)) if viol.size else 0.0)
    z0 = np.concatenate([x_p, [t0]])
    z, _, _, _ = _primal_active_set(H1, g1, A1, b1, n_eq, z0)
    t_star = z[n]
    if t_star > 1e-7 * max(1.0, scale):
        worst = float(np.max(A @ z[:n] - b)) if m else 0.0
        raise Infeasible("no point satisfies constraints", x=z[:n], violation=worst)
    return z[:n]


def solve_qp(p, x0=None, warm_active=None):
    """Solve a convex QP exactly.

    Parameters
    ----------
    p : QpProblem
    x0 : array, optional
        Starting guess; used directly when it is already feasible.
    warm_active : iterable of int, optional
        Inequality-row indices to seed the working set with.

    Returns
    -------
    QpResult with the optimizer, multipliers and the final active set.

    Raises
    ------
    Infeasible
        when no point satisfies the constraints within 1e-8.
    NotConverged
        when the iteration cap is hit; carries the best iterate.
    """
    n = p.n
    m_eq = p.A_eq.shape[0]
    m_in = p.A_ineq.shape[0]

    if m_eq == 0 and m_in == 0:
        chol = _Chol(p.H)
        x = -chol.solve(p.g)
        return QpResult(x=x, lam_ineq=np.zeros(0), lam_eq=np.zeros(0), iterations=0)

    A = np.vstack([p.A_eq, p.A_ineq])
    b = np.concatenate([p.b_eq, p.b_ineq])
    scale = max(1.0, float(np.max(np.abs(b))) if b.size else 1.0,
                float(np.max(np.abs(p.g))) if p.g.size else 1.0)

    # fast path: unconstrained optimum already feasible
    if m_eq == 0:
        chol = _Chol(p.H)
        xu = -chol.solve(p.g)
        if m_in == 0 or np.max(p.A_ineq @ xu - p.b_ineq) <= _FEAS_TOL * scale:
            return QpResult(x=xu, lam_ineq=np.zeros(m_in), lam_eq=np.zeros(0), iterations=0)

    if x0 is not None:
        x0 = np.asarray(x0, dtype=float).ravel()
        ok_eq = m_eq == 0 or np.linalg.norm(p.A_eq @ x0 - p.b_eq, np.inf) <= _FEAS_TOL * scale
        ok_in = m_in == 0 or np.max(p.A_ineq @ x0 - p.b_ineq) <= _FEAS_TOL * scale
        x_start = x0 if (ok_eq and ok_in) else None
    else:
        x_start = None
    if x_start is None:
        x_start = _phase1(A, b, m_eq, x0, scale)

    W0 = [m_eq + int(j) for j in warm_active] if warm_active else None
    x, lam, work, iters = _primal_active_set(p.H, p.g, A, b, m_eq, x_start, W0=W0)
    lam_eq = lam[:m_eq]
    lam_in = lam[m_eq:]
    active = [j - m_eq for j in work if j >= m_eq]
    return QpResult(x=x, lam_ineq=lam_in, lam_eq=lam_eq, active=active, iterations=iters)


def kkt_residual(p, res):
    """Max-norm stationarity residual of a QpResult (diagnostic)."""
    r = p.H @ res.x + p.g
    if p.A_eq.shape[0]:
        r = r + p.A_eq.T @ res.lam_eq
    if p.A_ineq.shape[0]:
        r = r + p.A_ineq.T @ res.lam_ineq
    return float(np.linalg.norm(r, np.inf))
