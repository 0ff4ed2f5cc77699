"""Scaled ratio averages approach a universal limit that ignores the weight.

With shifts x + s / Kt(x, x) the average tends to a determinant of
exp(i pi (beta - alpha)) / (beta - alpha); for one ratio at alpha = 0,
beta = i that is exp(-pi).
"""
import math

from opke import RatioQuery, TwoPointContext, WeightSpec, limit_ratio_average, scaled_ratio_average

q = RatioQuery((0.0,), (1j,))
print("limit", limit_ratio_average(q).real, "= e^-pi =", math.exp(-math.pi))

for spec, x in ((WeightSpec.chebyshev(), 0.0), (WeightSpec.legendre(), 0.3), (WeightSpec.jacobi(0.5, -0.3), -0.4)):
    errs = []
    for n in (16, 32, 64, 128, 256):
        v = scaled_ratio_average(TwoPointContext.for_spec(spec, n), x, q)
        errs.append(abs(v - limit_ratio_average(q)))
    print(f"{spec.family:9s} x={x:+.1f}", " ".join(f"{e:.1e}" for e in errs))

# two ratios at once
q2 = RatioQuery((0.0, 0.5), (1j, 1 + 1j))
v = scaled_ratio_average(TwoPointContext.for_spec(WeightSpec.chebyshev(), 128), 0.0, q2)
print("k=2, n=128:", v, " limit:", limit_ratio_average(q2))
