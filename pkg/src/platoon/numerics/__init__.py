"""Self-contained numerical kernels used by every other module.

Matrices and vectors are plain numpy arrays throughout; operations are pure
functions of their inputs plus an explicitly passed RNG where randomness is
involved, so everything here is safe to call from parallel workers.
"""

from .qp import QpProblem, solve_qp
from .linalg import dlqr, dlyap, expm_zoh
from .truncnorm import TruncatedNormal, tn_fit, tn_inv_cdf
from .kde import GaussianKde
from .copula import CopulaModel, copula_fit, copula_sample
from .kmeans import kmeans2
from .minimize import quasi_newton_min

__all__ = [
    "QpProblem",
    "solve_qp",
    "dlqr",
    "dlyap",
    "expm_zoh",
    "TruncatedNormal",
    "tn_fit",
    "tn_inv_cdf",
    "GaussianKde",
    "CopulaModel",
    "copula_fit",
    "copula_sample",
    "kmeans2",
    "quasi_newton_min",
]
