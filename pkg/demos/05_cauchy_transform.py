"""Scaled Cauchy transform of the kernel and how much of it lives far away."""
from opke import (
    LimitParams,
    TwoPointContext,
    WeightSpec,
    cauchy_limit,
    cauchy_tail,
    scaled_cauchy,
    w_limit_closed,
    w_limit_integral,
)

ctx = TwoPointContext.for_spec(WeightSpec.chebyshev(), 128)
for alpha, beta in ((0.0, 1j), (0.5, 1j), (0.0, 0.3 - 2j)):
    v = scaled_cauchy(ctx, 0.0, alpha, beta)
    print(f"alpha={alpha} beta={beta}: {v:.6f}  limit {cauchy_limit(alpha, beta):.6f}")

# the part of the integral outside a window of width ~ 2M / Kt is small
res = cauchy_tail(TwoPointContext.for_spec(WeightSpec.chebyshev(), 256), 0.0, 0.0, 1j)
print(f"tail {res.tail:.3e} <= bound {res.bound:.3f}")

# the limit function written as an integral of the sine kernel, truncated to |s| < L
for L in (50, 200, 800):
    r = w_limit_integral(1j, 0.0, LimitParams(truncation=L))
    print(f"L={L:4d} integral {r.value:.8f}  closed {w_limit_closed(1j, 0):.8f}  tail bound {r.tail_bound:.1e}")
