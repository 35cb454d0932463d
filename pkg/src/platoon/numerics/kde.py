"""One-dimensional Gaussian kernel density estimate with invertible CDF.

The smoothed empirical CDF is strictly increasing, so the inverse transform
(monotone bisection with a Newton polish) round-trips exactly enough for the
copula marginals it backs.
"""

import math

import numpy as np

_SQRT2 = math.sqrt(2.0)


def silverman_bandwidth(x):
    """Silverman's rule of thumb, robustified with the IQR."""
    x = np.asarray(x, dtype=float)
    n = x.size
    sd = float(np.std(x, ddof=1)) if n > 1 else 0.0
    q75, q25 = np.percentile(x, [75, 25])
    iqr = float(q75 - q25)
    spread = min(sd, iqr / 1.349) if iqr > 0 else sd
    if spread <= 0:
        spread = max(abs(float(np.mean(x))), 1.0) * 1e-3
    return 0.9 * spread * n ** (-0.2)


class GaussianKde:
    """Gaussian-kernel KDE over scalar samples."""

    def __init__(self, samples, bandwidth=None):
        self.samples = np.sort(np.asarray(samples, dtype=float).ravel())
        if self.samples.size < 2:
            raise ValueError("need at least 2 samples")
        self.bandwidth = float(bandwidth) if bandwidth else silverman_bandwidth(self.samples)
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        # inversion bracket wide enough that the CDF is numerically 0/1 outside
        self._lo = float(self.samples[0] - 10.0 * self.bandwidth)
        self._hi = float(self.samples[-1] + 10.0 * self.bandwidth)

    def cdf(self, x):
        z = (x - self.samples) / self.bandwidth
        if np.isscalar(x) or np.ndim(x) == 0:
            return float(np.mean(0.5 * (1.0 + np.array([math.erf(zi / _SQRT2) for zi in z]))))
        xa = np.asarray(x, dtype=float)[:, None]
        zz = (xa - self.samples[None, :]) / self.bandwidth
        from scipy.special import erf
        return np.mean(0.5 * (1.0 + erf(zz / _SQRT2)), axis=1)

    def pdf(self, x):
        z = (x - self.samples) / self.bandwidth
        return float(np.mean(np.exp(-0.5 * z * z)) / (self.bandwidth * math.sqrt(2 * math.pi)))

    def inv_cdf(self, p):
        """Monotone bisection on the smoothed CDF, Newton-polished."""
        if not (0.0 < p < 1.0):
            raise ValueError("p must be in (0, 1)")
        lo, hi = self._lo, self._hi
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) < p:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-13 * max(1.0, abs(lo), abs(hi)):
                break
        x = 0.5 * (lo + hi)
        for _ in range(3):
            dens = self.pdf(x)
            if dens <= 1e-300:
                break
            x_new = x - (self.cdf(x) - p) / dens
            if x_new <= self._lo or x_new >= self._hi:
                break
            x = x_new
        return float(min(max(x, self._lo), self._hi))

    def sample(self, rng, size=None):
        u = rng.random(size)
        if size is None:
            return self.inv_cdf(float(u))
        return np.array([self.inv_cdf(float(ui)) for ui in np.asarray(u).ravel()]).reshape(np.shape(u))
