"""Discrete-time control linear algebra: LQR, Lyapunov, exact ZOH discretization."""

import numpy as np

from ..errors import NoSolution, Unstable

_RICCATI_TOL = 1e-12
_RICCATI_MAX_ITER = 10_000


def dlqr(A, B, Q, R):
    """Discrete LQR gain for x(k+1) = A x + B u.

    Returns K_f such that u = K_f x is the stabilizing feedback law, i.e.
    K_f = -(R + B^T P B)^{-1} B^T P A with P the stabilizing solution of the
    discrete algebraic Riccati equation (found by fixed-point iteration).

    Raises NoSolution when the iteration diverges or fails to settle.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    R = np.atleast_2d(np.asarray(R, dtype=float))
    P = Q.copy()
    for _ in range(_RICCATI_MAX_ITER):
        BtPA = B.T @ P @ A
        gain = np.linalg.solve(R + B.T @ P @ B, BtPA)
        P_next = Q + A.T @ P @ A - BtPA.T @ gain
        P_next = 0.5 * (P_next + P_next.T)
        if not np.all(np.isfinite(P_next)) or np.max(np.abs(P_next)) > 1e14:
            raise NoSolution("Riccati iteration diverged")
        if np.max(np.abs(P_next - P)) <= _RICCATI_TOL * max(1.0, np.max(np.abs(P))):
            P = P_next
            break
        P = P_next
    else:
        raise NoSolution("Riccati iteration did not converge")
    K = np.linalg.solve(R + B.T @ P @ B, B.T @ P @ A)
    K_f = -K
    resid = riccati_residual(A, B, Q, R, P)
    if resid > 1e-8 * max(1.0, np.max(np.abs(P))):
        raise NoSolution(f"Riccati residual {resid:.2e} too large")
    if spectral_radius(A + B @ K_f) >= 1.0:
        raise NoSolution("closed loop not strictly stable")
    return K_f


def riccati_residual(A, B, Q, R, P):
    """Max-norm residual of the discrete algebraic Riccati equation."""
    BtPA = B.T @ P @ A
    term = BtPA.T @ np.linalg.solve(R + B.T @ P @ B, BtPA)
    return float(np.max(np.abs(A.T @ P @ A - P - term + Q)))


def dlyap(Acl, W):
    """Solve Q_p - Acl^T Q_p Acl = W for a Schur-stable Acl.

    Uses the Kronecker-product linear system, exact for the small (<=4 state)
    matrices used here.  Raises Unstable when rho(Acl) >= 1.
    """
    Acl = np.atleast_2d(np.asarray(Acl, dtype=float))
    W = np.atleast_2d(np.asarray(W, dtype=float))
    if spectral_radius(Acl) >= 1.0:
        raise Unstable("spectral radius >= 1")
    n = Acl.shape[0]
    lhs = np.eye(n * n) - np.kron(Acl.T, Acl.T)
    qp = np.linalg.solve(lhs, W.reshape(n * n, order="F")).reshape((n, n), order="F")
    return 0.5 * (qp + qp.T)


def spectral_radius(M):
    return float(np.max(np.abs(np.linalg.eigvals(np.atleast_2d(M)))))


def expm(M, terms=13):
    """Matrix exponential by scaling-and-squaring over a truncated series."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    norm = np.max(np.abs(M))
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
        M = M / (2.0 ** squarings)
    out = np.eye(M.shape[0])
    term = np.eye(M.shape[0])
    for j in range(1, terms + 1):
        term = term @ M / j
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def expm_zoh(A, B, D, dt):
    """Exact zero-order-hold discretization of dx = A x + B u + D w.

    Returns (A', B', D') with A' = exp(A dt), B' = \\int_0^dt exp(A s) ds B,
    and D' analogous, via the block-augmented matrix exponential.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    D = np.atleast_2d(np.asarray(D, dtype=float))
    n = A.shape[0]
    if B.ndim == 2 and B.shape[0] != n:
        B = B.reshape(n, -1)
    if D.ndim == 2 and D.shape[0] != n:
        D = D.reshape(n, -1)
    m = B.shape[1] + D.shape[1]
    blk = np.zeros((n + m, n + m))
    blk[:n, :n] = A
    blk[:n, n:] = np.hstack([B, D])
    E = expm(blk * dt)
    Ad = E[:n, :n]
    BD = E[:n, n:]
    Bd = BD[:, : B.shape[1]]
    Dd = BD[:, B.shape[1]:]
    return Ad, Bd, Dd
