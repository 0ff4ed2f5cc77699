"""Reproducing (Christoffel-Darboux) kernel and its bulk scaling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orthopoly import RecurrenceTable, WeightSpec, eval_orthonormal, recurrence

__all__ = [
    "KernelEvaluator",
    "kernel_sum",
    "kernel_cd",
    "kernel_normalized_diag",
    "scaled_kernel",
    "CD_THRESHOLD",
]

CD_THRESHOLD = 1e-8


@dataclass(frozen=True)
class KernelEvaluator:
    """Kernel of order ``n`` for the measure ``spec`` with coefficients ``rec``."""

    rec: RecurrenceTable
    spec: WeightSpec
    n: int

    def __post_init__(self):
        if not 1 <= self.n < self.rec.depth:
            raise ValueError(
                f"kernel order n={self.n} needs 1 <= n < recurrence depth {self.rec.depth}"
            )

    @classmethod
    def for_spec(cls, spec, n, extra=4):
        """Evaluator with a freshly built recurrence table of depth n + extra."""
        return cls(recurrence(spec, n + max(extra, 1)), spec, n)


def kernel_sum(ev, x, y):
    """K_n(x, y) = sum_{k<n} p_k(x) p_k(y).  Broadcasts over array inputs."""
    x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
    px = eval_orthonormal(ev.rec, ev.n - 1, x)
    py = eval_orthonormal(ev.rec, ev.n - 1, y)
    out = np.sum(px * py, axis=0)
    return out[()] if out.ndim == 0 else out


def kernel_cd(ev, x, y):
    """K_n(x, y) through the Christoffel-Darboux quotient.

    Falls back to :func:`kernel_sum` where |x - y| < 1e-8 (1 + |x|).
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    x, y = np.broadcast_arrays(x, y)
    n = ev.n
    px = eval_orthonormal(ev.rec, n, x)
    py = eval_orthonormal(ev.rec, n, y)
    diff = x - y
    near = np.abs(diff) < CD_THRESHOLD * (1.0 + np.abs(x))
    safe = np.where(near, 1.0, diff)
    # gamma_{n-1} / gamma_n = b_n
    out = ev.rec.b[n - 1] * (px[n] * py[n - 1] - px[n - 1] * py[n]) / safe
    if np.any(near):
        out = np.where(near, np.sum(px[:n] * py[:n], axis=0), out)
    return out[()] if out.ndim == 0 else out


def kernel_normalized_diag(ev, x):
    """w(x) K_n(x, x) for real ``x`` where the density is positive."""
    x = float(x)
    lo, hi = ev.spec.support
    if not lo < x < hi:
        raise ValueError(f"x={x} is not interior to the support [{lo}, {hi}]")
    w = float(ev.spec.density(x))
    if not w > 0:
        raise ValueError(f"density vanishes at x={x}")
    return w * float(np.real(kernel_sum(ev, x, x)))


def scaled_kernel(ev, x, a, b):
    """K_n(x + a/Kt, x + b/Kt) / K_n(x, x) with Kt = w(x) K_n(x, x)."""
    kt = kernel_normalized_diag(ev, x)
    kxx = float(np.real(kernel_sum(ev, x, x)))
    return complex(kernel_cd(ev, x + complex(a) / kt, x + complex(b) / kt)) / kxx
