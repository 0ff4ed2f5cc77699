"""Cauchy transforms of p_l and of the reproducing kernel.

The default route is pole extraction.  For a polynomial q,

    int q(t) / (t - beta) dmu(t)
        = int (q(t) - q(beta)) / (t - beta) dmu(t) + q(beta) G(beta),

where the first integrand is a polynomial of one degree less, so a Gauss
rule of modest size integrates it exactly and G carries all of the
singular behaviour as beta approaches the real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernel import KernelEvaluator, kernel_normalized_diag, kernel_sum
from .orthopoly import eval_orthonormal, recurrence, stieltjes_transform
from .quadrature import adaptive_integrate, golub_welsch

__all__ = [
    "TwoPointContext",
    "cauchy_orthopoly",
    "kernel_cauchy",
    "w_two_point",
    "w_two_point_cd",
    "scaled_cauchy",
    "cauchy_tail",
]

POLE_EXTRACTION = "pole_extraction"
DIRECT_QUADRATURE = "direct_quadrature"

DIRECT_MIN_NODES = 100

# pole extraction loses about log10(rho^deg) digits to cancellation
_FAR_FIELD = math.log(1e2)
_TARGET_DIGITS = 37.0


def _check_beta(beta):
    beta = complex(beta)
    if beta.imag == 0:
        raise ValueError(f"beta={beta} must be non-real")
    return beta


@dataclass
class TwoPointContext:
    """Evaluation context for W_n; caches the Gauss rules it builds.

    ``tol`` is the absolute tolerance for Stieltjes transforms without a
    closed form.  Pole extraction multiplies that error by |K_n(beta, alpha)|,
    hence the tight default.
    """

    ev: KernelEvaluator
    pole_method: str = POLE_EXTRACTION
    tol: float = 1e-13
    _rules: dict = field(default_factory=dict, init=False, repr=False)
    _g: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.pole_method not in (POLE_EXTRACTION, DIRECT_QUADRATURE):
            raise ValueError(f"unknown pole_method {self.pole_method!r}")

    @classmethod
    def for_spec(cls, spec, n, pole_method=POLE_EXTRACTION, tol=1e-13):
        depth = n + 4
        if pole_method == DIRECT_QUADRATURE:
            depth = max(depth, 10 * n, DIRECT_MIN_NODES)
        return cls(KernelEvaluator(recurrence(spec, depth), spec, n), pole_method, tol)

    @property
    def n(self):
        return self.ev.n

    def rule(self, m):
        if m not in self._rules:
            rec = self.ev.rec
            if m > rec.depth:
                rec = recurrence(self.ev.spec, m)
            self._rules[m] = golub_welsch(rec, m)
        return self._rules[m]

    def far_field_rule(self, degree, beta):
        """Gauss rule for direct integration when beta is far from the support.

        Returns ``None`` while pole extraction is accurate, i.e. while
        rho^degree <= 100 for the Bernstein-ellipse parameter rho of beta.
        Otherwise the rule integrates q(t)/(t - beta) with deg q = degree to
        roughly double precision.
        """
        lo, hi = self.ev.spec.support
        s = (beta - 0.5 * (lo + hi)) / (0.5 * (hi - lo))
        r = abs(s + np.sqrt(s - 1.0) * np.sqrt(s + 1.0))
        log_rho = abs(math.log(r))
        if degree * log_rho <= _FAR_FIELD:
            return None
        return self.rule(math.ceil(0.5 * (degree + _TARGET_DIGITS / log_rho)) + 1)

    def stieltjes(self, beta):
        if beta not in self._g:
            self._g[beta] = stieltjes_transform(self.ev.spec, beta, self.tol)
        return self._g[beta]


def cauchy_orthopoly(ctx, l, beta):
    """h_l(beta) = int p_l(t) dmu(t) / (t - beta)."""
    beta = _check_beta(beta)
    rec = ctx.ev.rec
    if l >= rec.depth:
        raise ValueError(f"l={l} exceeds the recurrence depth {rec.depth}")
    if l == 0:
        return ctx.stieltjes(beta)
    far = ctx.far_field_rule(l, beta)
    if far is not None:
        pt = eval_orthonormal(rec, l, far.nodes)[l]
        return complex(np.dot(far.weights, pt / (far.nodes - beta)))
    g = ctx.stieltjes(beta)
    rule = ctx.rule(-(-l // 2) + 1)
    pt = eval_orthonormal(rec, l, rule.nodes)[l]
    pb = eval_orthonormal(rec, l, beta)[l]
    poly = np.dot(rule.weights, (pt - pb) / (rule.nodes - beta))
    return complex(poly + pb * g)


def kernel_cauchy(ctx, beta, alpha):
    """int K_n(t, alpha) dmu(t) / (t - beta)."""
    beta = _check_beta(beta)
    n = ctx.n
    rec = ctx.ev.rec
    pa = eval_orthonormal(rec, n - 1, alpha)
    rule = None
    if ctx.pole_method == DIRECT_QUADRATURE:
        rule = ctx.rule(max(10 * n, DIRECT_MIN_NODES))
    elif n > 1:
        rule = ctx.far_field_rule(n - 1, beta)
    if rule is not None:
        kt = np.tensordot(pa, eval_orthonormal(rec, n - 1, rule.nodes), axes=(0, 0))
        return complex(np.dot(rule.weights, kt / (rule.nodes - beta)))
    rule = ctx.rule(-(-n // 2) + 2)
    kt = np.tensordot(pa, eval_orthonormal(rec, n - 1, rule.nodes), axes=(0, 0))
    kb = complex(np.dot(pa, eval_orthonormal(rec, n - 1, beta)))
    poly = np.dot(rule.weights, (kt - kb) / (rule.nodes - beta))
    return complex(poly + kb * ctx.stieltjes(beta))


def _check_pair(beta, alpha):
    beta = _check_beta(beta)
    alpha = complex(alpha)
    if alpha == beta:
        raise ValueError("alpha and beta must be distinct")
    return beta, alpha


def w_two_point(ctx, beta, alpha):
    """W_n(beta, alpha) = 1/(beta - alpha) + int K_n(t, alpha) dmu(t)/(t - beta)."""
    beta, alpha = _check_pair(beta, alpha)
    a = alpha.real if alpha.imag == 0 else alpha
    return 1.0 / (beta - alpha) + kernel_cauchy(ctx, beta, a)


def w_two_point_cd(ctx, beta, alpha):
    """W_n from h_n and h_{n-1} (Christoffel-Darboux form)."""
    beta, alpha = _check_pair(beta, alpha)
    n = ctx.n
    p = eval_orthonormal(ctx.ev.rec, n, alpha)
    hn = cauchy_orthopoly(ctx, n, beta)
    hm = cauchy_orthopoly(ctx, n - 1, beta)
    return complex(ctx.ev.rec.b[n - 1] * (hn * p[n - 1] - hm * p[n]) / (beta - alpha))


def scaled_cauchy(ctx, x, alpha, beta):
    """(1/Kt) int K_n(x + alpha/Kt, t) dmu(t) / (t - x - beta/Kt), Kt = Kt_n(x, x).

    Evaluated as (1/Kt) [W_n(x + beta/Kt, x + alpha/Kt) - Kt/(beta - alpha)].
    """
    beta = _check_beta(beta)
    kt = kernel_normalized_diag(ctx.ev, x)
    b1 = x + beta / kt
    a1 = x + float(alpha) / kt
    return (w_two_point(ctx, b1, a1) - kt / (beta - alpha)) / kt


@dataclass(frozen=True)
class TailDiagnostic:
    tail: float
    bound: float
    inner: complex
    total: complex
    kt: float


def cauchy_tail(ctx, x, alpha, beta, M=None, J=None, tol=1e-11):
    """Tail of the scaled Cauchy transform outside I_n = [x - M/Kt, x + M/Kt].

    Returns the modulus of

        (1/Kt) int_{R \\ I_n} K_n(x + alpha/Kt, t) / (t - x - beta/Kt) dmu(t)

    together with the asymptotic bound 8 sqrt(||w||_J / (w(x) M)).  The tail
    is computed as the full transform (pole extraction) minus the part over
    I_n, where the density is smooth and adaptive quadrature applies.
    """
    beta = _check_beta(beta)
    if M is None:
        M = 2.0 * abs(beta)
    if M < 2.0 * abs(beta):
        raise ValueError("M must be at least 2|beta|")
    if J is None:
        J = (x - 0.5, x + 0.5)
    ev = ctx.ev
    kt = kernel_normalized_diag(ev, x)
    a1 = x + float(alpha) / kt
    b1 = x + beta / kt
    total = kernel_cauchy(ctx, b1, a1) / kt
    lo, hi = x - M / kt, x + M / kt
    pa = eval_orthonormal(ev.rec, ev.n - 1, a1)

    def integrand(t):
        k = np.tensordot(pa, eval_orthonormal(ev.rec, ev.n - 1, t), axes=(0, 0))
        return k * ev.spec.density(t) / (t - b1)

    inner = adaptive_integrate(integrand, lo, hi, tol * kt) / kt
    wx = float(ev.spec.density(x))
    bound = 8.0 * math.sqrt(ev.spec.sup_density(*J) / (wx * M))
    return TailDiagnostic(abs(total - inner), bound, inner, total, kt)
