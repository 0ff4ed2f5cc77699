"""Independent ground truth for ensemble averages.

``brute_ratio_average`` integrates the symmetric function directly against
the joint density V(x)^2 prod dmu(x_i) with a tensor Gauss rule, and
``mcmc_ratio_average`` samples the joint density with a Metropolis walk.
Neither touches the reproducing kernel or the Cauchy transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import ConvergenceError, HypothesisError
from .orthopoly import discretize

__all__ = [
    "EnsembleDensity",
    "ratio_integrand",
    "brute_average",
    "brute_ratio_average",
    "brute_partition",
    "MCMCResult",
    "mcmc_sample",
    "mcmc_ratio_average",
]

MAX_BRUTE_N = 3


@dataclass(frozen=True)
class EnsembleDensity:
    """Joint density of the n-particle ensemble; logZ is computed by quadrature."""

    spec: object
    n: int
    logZ: float

    @classmethod
    def build(cls, spec, n, m=80):
        return cls(spec, n, math.log(brute_partition(spec, n, m)))

    def log_density(self, x):
        """Log of V(x)^2 prod w(x_i) / Z_n for configurations along the last axis."""
        x = np.asarray(x, dtype=float)
        w = self.spec.density(x)
        with np.errstate(divide="ignore"):
            out = np.sum(np.log(w), axis=-1)
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    out = out + 2.0 * np.log(np.abs(x[..., j] - x[..., i]))
        return out - self.logZ


def _tensor_grid(spec, n, m):
    if n > MAX_BRUTE_N:
        raise HypothesisError(f"brute-force quadrature is limited to n <= {MAX_BRUTE_N}")
    if n < 1:
        raise ValueError("n must be >= 1")
    x, w = discretize(spec, m)
    axes = np.meshgrid(*([x] * n), indexing="ij")
    wts = np.meshgrid(*([w] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in axes])
    weight = np.prod(np.stack([g.ravel() for g in wts]), axis=0)
    vdm2 = np.ones(pts.shape[1])
    for i in range(n):
        for j in range(i + 1, n):
            vdm2 *= (pts[j] - pts[i]) ** 2
    return pts, weight * vdm2


def brute_partition(spec, n, m=80):
    """Z_n = int V(x)^2 prod dmu(x_i) over R^n by tensor Gauss quadrature."""
    _, wv = _tensor_grid(spec, n, m)
    return float(np.sum(wv))


def brute_average(spec, n, f, m=80):
    """<f> for a symmetric ``f`` taking an (n, npoints) array of configurations."""
    pts, wv = _tensor_grid(spec, n, m)
    vals = np.asarray(f(pts))
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite on the tensor grid")
    return complex(np.dot(wv, vals) / np.sum(wv))


def ratio_integrand(q):
    """f(x) = prod_j prod_i (alpha_j - x_i)/(beta_j - x_i) over configurations x."""

    def f(pts):
        pts = np.asarray(pts)
        out = np.ones(pts.shape[1:], dtype=complex)
        for a, b in zip(q.alphas, q.betas):
            out *= np.prod((a - pts) / (b - pts), axis=0)
        return out

    return f


def brute_ratio_average(spec, n, q, m=80):
    """Ratio average by n-dimensional tensor Gauss quadrature (n <= 3)."""
    if q.k == 0:
        return 1.0 + 0j
    return brute_average(spec, n, ratio_integrand(q), m)


@dataclass(frozen=True)
class MCMCResult:
    samples: np.ndarray
    acceptance_rate: float
    burn_in: int


def _reflect(x, lo, hi):
    width = hi - lo
    y = np.mod(x - lo, 2.0 * width)
    return lo + np.where(y > width, 2.0 * width - y, y)


def mcmc_sample(spec, n, steps, seed, scale=None, window=5000):
    """Metropolis random walk on the n-particle joint density.

    One particle is moved per step with a Gaussian proposal reflected back
    into the support.  The first ``steps // 5`` states are discarded.  The
    generator is Philox (counter based), so streams are reproducible from
    ``seed``.
    """
    if n < 1 or steps < 1:
        raise ValueError("n and steps must be >= 1")
    lo, hi = spec.support
    if scale is None:
        scale = 0.5 * (hi - lo) / math.sqrt(n)
    rng = np.random.Generator(np.random.Philox(seed))

    def logw(t):
        w = float(spec.density(t))
        return math.log(w) if w > 0 else -math.inf

    # start from Chebyshev-like points, which are well separated
    x = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * (np.arange(n) + 0.5) / n))
    lw = np.array([logw(t) for t in x])
    moves = rng.normal(0.0, scale, size=steps)
    which = rng.integers(0, n, size=steps)
    logu = np.log(rng.random(size=steps))
    burn = steps // 5
    out = np.empty((steps - burn, n))
    accepted = 0
    window_acc = 0
    for s in range(steps):
        i = which[s]
        new = float(_reflect(x[i] + moves[s], lo, hi))
        lw_new = logw(new)
        if lw_new > -math.inf:
            others = np.delete(x, i)
            dlog = lw_new - lw[i] + 2.0 * np.sum(
                np.log(np.abs(others - new)) - np.log(np.abs(others - x[i]))
            ) if n > 1 else lw_new - lw[i]
            if logu[s] < dlog:
                x[i] = new
                lw[i] = lw_new
                accepted += 1
                window_acc += 1
        if (s + 1) % window == 0:
            if window_acc == 0:
                raise ConvergenceError(
                    f"no proposal accepted in steps {s + 2 - window}..{s + 1}; "
                    "use a smaller proposal scale"
                )
            window_acc = 0
        if s >= burn:
            out[s - burn] = x
    return MCMCResult(out, accepted / steps, burn)


def _batch_stderr(vals, batches=50):
    nb = max(2, min(batches, vals.size // 10))
    usable = (vals.size // nb) * nb
    means = vals[:usable].reshape(nb, -1).mean(axis=1)
    return float(np.std(means, ddof=1) / math.sqrt(nb))


def mcmc_ratio_average(spec, n, q, steps, seed, **kw):
    """Monte Carlo ratio average and its batch-means standard error."""
    if q.k == 0:
        return 1.0 + 0j, 0.0
    if any(abs(b.imag) < 0.2 for b in q.betas):
        raise HypothesisError("MCMC estimator needs |Im beta_j| >= 0.2")
    res = mcmc_sample(spec, n, steps, seed, **kw)
    vals = ratio_integrand(q)(res.samples.T)
    err = math.hypot(_batch_stderr(vals.real), _batch_stderr(vals.imag))
    return complex(vals.mean()), err
