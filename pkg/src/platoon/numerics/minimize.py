"""BFGS quasi-Newton minimization for smooth low-dimensional objectives."""

import numpy as np

_GRAD_STEP = 1e-5


def central_diff_gradient(f, x, step=_GRAD_STEP):
    """Central differences with per-coordinate steps scaled by magnitude."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        h = step * max(1.0, abs(x[i]))
        xp = x.copy(); xp[i] += h
        xm = x.copy(); xm[i] -= h
        g[i] = (f(xp) - f(xm)) / (2.0 * h)
    return g


class MinimizeResult:
    def __init__(self, x, fun, grad_norm, iterations, converged):
        self.x = x
        self.fun = fun
        self.grad_norm = grad_norm
        self.iterations = iterations
        self.converged = converged


def quasi_newton_min(f, x0, grad=None, tol=1e-6, max_iter=500):
    """Minimize f from x0 with BFGS and a backtracking Armijo line search.

    `grad` is optional; central differences are used when omitted.  Stops
    when the gradient max-norm falls below `tol` or after `max_iter`
    iterations, in which case the best iterate is returned with
    ``converged=False`` (no exception: callers inspect the flag).
    """
    x = np.asarray(x0, dtype=float).copy()
    n = x.size
    if grad is None:
        grad = lambda z: central_diff_gradient(f, z)
    fx = f(x)
    g = grad(x)
    Hinv = np.eye(n)
    best_x, best_f = x.copy(), fx
    it = 0
    for it in range(1, max_iter + 1):
        gnorm = np.linalg.norm(g, np.inf)
        if gnorm <= tol:
            return MinimizeResult(x, fx, gnorm, it - 1, True)
        p = -Hinv @ g
        slope = float(g @ p)
        if slope >= 0:  # stale curvature; restart from steepest descent
            Hinv = np.eye(n)
            p = -g
            slope = -float(g @ g)
        alpha = 1.0
        accepted = False
        for _ in range(40):
            x_new = x + alpha * p
            f_new = f(x_new)
            if f_new <= fx + 1e-4 * alpha * slope:
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            break
        g_new = grad(x_new)
        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        if sy > 1e-12 * max(1.0, float(np.linalg.norm(s)) * float(np.linalg.norm(y))):
            rho = 1.0 / sy
            I = np.eye(n)
            V = I - rho * np.outer(s, y)
            Hinv = V @ Hinv @ V.T + rho * np.outer(s, s)
        x, fx, g = x_new, f_new, g_new
        if fx < best_f:
            best_x, best_f = x.copy(), fx
    gnorm = float(np.linalg.norm(g, np.inf))
    if fx > best_f:
        x, fx = best_x, best_f
        gnorm = float(np.linalg.norm(grad(x), np.inf))
    return MinimizeResult(x, fx, gnorm, it, gnorm <= tol)
