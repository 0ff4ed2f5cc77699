"""Universal bulk limits: sine kernel, the limiting two-point function, and
the limiting Cauchy transform of the sine kernel."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_integrate

__all__ = [
    "LimitParams",
    "LimitIntegral",
    "sinc_kernel",
    "w_limit_closed",
    "w_limit_integral",
    "cauchy_limit",
]

_SINC_SERIES = 1e-8


@dataclass(frozen=True)
class LimitParams:
    """Truncation half-width ``truncation`` (>= 10) and absolute ``tol``."""

    truncation: float = 200.0
    tol: float = 1e-10

    def __post_init__(self):
        if self.truncation < 10:
            raise ValueError("truncation must be >= 10")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class LimitIntegral:
    value: complex
    tail_bound: float
    quad_tol: float


def sinc_kernel(a, b):
    """S(a, b) = sin(pi (a - b)) / (pi (a - b)), equal to 1 on the diagonal."""
    d = complex(a) - complex(b)
    if abs(d) < _SINC_SERIES:
        return 1.0 - (math.pi * d) ** 2 / 6.0
    return cmath.sin(math.pi * d) / (math.pi * d)


def w_limit_closed(beta, alpha):
    """Limiting two-point function exp(+-i pi (beta - alpha)) / (beta - alpha).

    The sign of the exponent follows the sign of Im beta.
    """
    beta = complex(beta)
    if beta.imag == 0:
        raise ValueError("beta must be non-real")
    d = beta - complex(alpha)
    sign = 1.0 if beta.imag > 0 else -1.0
    return cmath.exp(sign * 1j * math.pi * d) / d


def _sinc_over(alpha, beta):
    def f(s):
        u = s - alpha
        # np.sinc(u) = sin(pi u)/(pi u), finite at u = 0
        return np.sinc(u) / (s - beta)

    return f


def w_limit_integral(beta, alpha, params=LimitParams()):
    """Quadrature form of the limiting two-point function.

    1/(beta - alpha) plus the sine-kernel Cauchy integral truncated to
    [alpha - L, alpha + L].  ``tail_bound`` bounds the discarded part:
    2 / (pi (L - |beta - alpha|)).
    """
    beta = complex(beta)
    if beta.imag == 0:
        raise ValueError("beta must be non-real")
    alpha = float(alpha)
    L = params.truncation
    d = abs(beta - alpha)
    if d >= L:
        raise ValueError("truncation must exceed |beta - alpha|")
    body = adaptive_integrate(_sinc_over(alpha, beta), alpha - L, alpha + L, params.tol)
    return LimitIntegral(
        value=1.0 / (beta - alpha) + body,
        tail_bound=2.0 / (math.pi * (L - d)),
        quad_tol=params.tol,
    )


def cauchy_limit(alpha, beta):
    """int S(alpha, s) / (s - beta) ds = (exp(+-i pi (beta - alpha)) - 1)/(beta - alpha)."""
    beta = complex(beta)
    if beta.imag == 0:
        raise ValueError("beta must be non-real")
    d = beta - complex(alpha)
    sign = 1.0 if beta.imag > 0 else -1.0
    return (cmath.exp(sign * 1j * math.pi * d) - 1.0) / d
