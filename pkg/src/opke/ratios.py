"""Averages of ratios of characteristic polynomials.

For an ensemble of n particles and pairwise distinct shifts,

    < prod_j D_n(alpha_j) / D_n(beta_j) >
        = (-1)^{k(k+1)/2} V(beta, alpha) / (V(beta)^2 V(alpha)^2) det[W_n(beta_i, alpha_j)],

with V(v) = prod_{i<j} (v_j - v_i) and V(beta, alpha) the Vandermonde of
the concatenated vector (beta_1..beta_k, alpha_1..alpha_k).  The prefactor
collapses to prod_{i,j} (alpha_j - beta_i) / (V(beta) V(alpha)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._errors import HypothesisError
from .cauchy import w_two_point
from .kernel import kernel_normalized_diag
from .limits import w_limit_closed

__all__ = [
    "RatioQuery",
    "vandermonde_factor",
    "det_pivoted",
    "ratio_average",
    "scaled_ratio_average",
    "limit_ratio_average",
    "MIN_SEPARATION",
]

MIN_SEPARATION = 1e-6
MIN_PIVOT = 1e-30


@dataclass(frozen=True)
class RatioQuery:
    """Numerator shifts ``alphas`` and non-real denominator shifts ``betas``."""

    alphas: tuple
    betas: tuple

    def __post_init__(self):
        alphas = tuple(complex(a) for a in np.atleast_1d(self.alphas))
        betas = tuple(complex(b) for b in np.atleast_1d(self.betas))
        if len(alphas) != len(betas):
            raise HypothesisError("need as many alphas as betas (balanced k-over-k ratio)")
        if any(b.imag == 0 for b in betas):
            raise HypothesisError("every beta_j must have Im(beta_j) != 0")
        shifts = alphas + betas
        for u, v in itertools.combinations(shifts, 2):
            if abs(u - v) < MIN_SEPARATION:
                raise HypothesisError(
                    f"shifts {u} and {v} are not pairwise distinct "
                    f"(separation below {MIN_SEPARATION})"
                )
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

    @property
    def k(self):
        return len(self.alphas)

    def alphas_real(self):
        return all(a.imag == 0 for a in self.alphas)

    def shifted(self, x, scale):
        """Query with every shift s replaced by x + s / scale."""
        return RatioQuery(
            tuple(x + a / scale for a in self.alphas),
            tuple(x + b / scale for b in self.betas),
        )


def _vandermonde(v):
    out = 1.0 + 0j
    for i, j in itertools.combinations(range(len(v)), 2):
        out *= v[j] - v[i]
    return out


def vandermonde_factor(q):
    """prod_{i,j} (alpha_j - beta_i) / (V(beta) V(alpha)), a product of factors."""
    if q.k == 0:
        return 1.0 + 0j
    num = 1.0 + 0j
    for a in q.alphas:
        for b in q.betas:
            num *= a - b
    return num / (_vandermonde(q.betas) * _vandermonde(q.alphas))


def det_pivoted(mat):
    """Determinant of a small complex matrix by LU with partial pivoting."""
    a = np.array(mat, dtype=complex)
    k = a.shape[0]
    if a.shape != (k, k):
        raise ValueError("matrix must be square")
    det = 1.0 + 0j
    for c in range(k):
        p = c + int(np.argmax(np.abs(a[c:, c])))
        if abs(a[p, c]) < MIN_PIVOT:
            raise HypothesisError(
                "determinant is numerically singular; shifts are nearly coincident"
            )
        if p != c:
            a[[c, p]] = a[[p, c]]
            det = -det
        det *= a[c, c]
        a[c + 1 :, c:] -= np.outer(a[c + 1 :, c] / a[c, c], a[c, c:])
    return det


def _assemble(q, entry):
    k = q.k
    if k == 0:
        return 1.0 + 0j
    mat = np.empty((k, k), dtype=complex)
    for i, b in enumerate(q.betas):
        for j, a in enumerate(q.alphas):
            mat[i, j] = entry(b, a)
    sign = -1.0 if (k * (k + 1) // 2) % 2 else 1.0
    return complex(sign * vandermonde_factor(q) * det_pivoted(mat))


def ratio_average(ctx, q):
    """Ensemble average of prod_j D_n(alpha_j)/D_n(beta_j) for n = ctx.n."""
    if q.k > ctx.n:
        raise HypothesisError(f"need 1 <= k <= n, got k={q.k}, n={ctx.n}")
    return _assemble(q, lambda b, a: w_two_point(ctx, b, a))


def scaled_ratio_average(ctx, x, q):
    """Ratio average at shifts x + s / Kt_n(x, x)."""
    if not q.alphas_real():
        raise HypothesisError("scaled averages need real alpha_j")
    kt = kernel_normalized_diag(ctx.ev, x)
    return ratio_average(ctx, q.shifted(float(x), kt))


def limit_ratio_average(q):
    """n -> infinity limit of :func:`scaled_ratio_average`."""
    if not q.alphas_real():
        raise HypothesisError("the universal limit needs real alpha_j")
    return _assemble(q, w_limit_closed)
