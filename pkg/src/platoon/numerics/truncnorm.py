"""Truncated normal distribution with exact CDF round-trips.

The parametrization follows the forecast-fitting convention used throughout:
``mean`` and ``variance`` are the moments of the *parent* normal (set to the
sample moments when fitted), and the density is renormalized on
``[lower, upper]``.  The CDF therefore satisfies CDF(lower) = 0 and
CDF(upper) = 1 exactly.
"""

import math
from dataclasses import dataclass

import numpy as np

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _phi(z):
    return math.exp(-0.5 * z * z) * _INV_SQRT_2PI


def _Phi(z):
    return 0.5 * (1.0 + math.erf(z / _SQRT2))


@dataclass
class TruncatedNormal:
    mean: float
    variance: float
    lower: float
    upper: float
    degenerate: bool = False

    def __post_init__(self):
        if self.degenerate:
            return
        if not (self.lower < self.upper):
            raise ValueError("lower must be < upper")
        if not (self.variance > 0.0):
            raise ValueError("variance must be positive")
        sd = math.sqrt(self.variance)
        self._sd = sd
        self._zl = (self.lower - self.mean) / sd
        self._zu = (self.upper - self.mean) / sd
        self._Fl = _Phi(self._zl)
        self._Fu = _Phi(self._zu)
        self._mass = self._Fu - self._Fl
        if self._mass <= 0.0:
            # truncation window in an extreme tail; fall back to a point mass
            self.degenerate = True
            self.mean = 0.5 * (self.lower + self.upper)

    @classmethod
    def point_mass(cls, value):
        return cls(mean=float(value), variance=0.0, lower=float(value),
                   upper=float(value), degenerate=True)

    def cdf(self, x):
        if self.degenerate:
            return 0.0 if x < self.mean else 1.0
        if x <= self.lower:
            return 0.0
        if x >= self.upper:
            return 1.0
        z = (x - self.mean) / self._sd
        return (_Phi(z) - self._Fl) / self._mass

    def pdf(self, x):
        if self.degenerate:
            return math.inf if x == self.mean else 0.0
        if x < self.lower or x > self.upper:
            return 0.0
        z = (x - self.mean) / self._sd
        return _phi(z) / (self._sd * self._mass)

    def sample(self, rng, size=None):
        """Inverse-CDF sampling; deterministic given the RNG state."""
        if self.degenerate:
            u = rng.random(size)
            return np.full_like(np.asarray(u, dtype=float), self.mean)
        u = rng.random(size)
        if size is None:
            return tn_inv_cdf(self, float(u))
        return np.array([tn_inv_cdf(self, ui) for ui in np.asarray(u).ravel()]).reshape(np.shape(u))


def tn_fit(samples):
    """Fit a truncated normal to samples per the forecast convention.

    mean/variance are the sample moments; bounds are the sample min/max.
    All-equal samples yield a flagged point mass.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < 2:
        raise ValueError("need at least 2 samples")
    lo = float(np.min(x))
    hi = float(np.max(x))
    if hi - lo <= 0.0:
        return TruncatedNormal.point_mass(lo)
    return TruncatedNormal(mean=float(np.mean(x)), variance=float(np.var(x, ddof=1)),
                           lower=lo, upper=hi)


def tn_inv_cdf(d, p):
    """Quantile of a TruncatedNormal by bisection plus Newton polish.

    Satisfies CDF(result) = p to 1e-8 and result in [lower, upper] for
    0 < p < 1; the p -> 0+/1- limits return the truncation endpoints.
    """
    if not (0.0 < p < 1.0):
        raise ValueError("p must be in (0, 1)")
    if d.degenerate:
        return d.mean
    lo, hi = d.lower, d.upper
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if d.cdf(mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, abs(lo), abs(hi)):
            break
    x = 0.5 * (lo + hi)
    for _ in range(4):
        f = d.cdf(x) - p
        dens = d.pdf(x)
        if dens <= 0.0:
            break
        step = f / dens
        x_new = x - step
        if x_new <= d.lower or x_new >= d.upper:
            break
        x = x_new
        if abs(step) <= 1e-14 * max(1.0, abs(x)):
            break
    return min(max(x, d.lower), d.upper)
