"""Christoffel-Darboux kernel, and its local convergence to the sine kernel."""
from opke import KernelEvaluator, WeightSpec, kernel_cd, kernel_sum, scaled_kernel, sinc_kernel

ev = KernelEvaluator.for_spec(WeightSpec.legendre(), 20)
x, y = 0.31, -0.47 + 0.2j
print("sum form", kernel_sum(ev, x, y))
print("CD form ", kernel_cd(ev, x, y))

# zoom in around a bulk point at the local mean spacing 1/Kt(x, x)
for name in ("chebyshev", "legendre"):
    spec = getattr(WeightSpec, name)()
    print(name)
    for n in (16, 64, 256):
        ev = KernelEvaluator.for_spec(spec, n)
        row = [scaled_kernel(ev, 0.2, a, b).real - sinc_kernel(a, b).real
               for a, b in ((0, 1), (0.25, -0.25), (0.5, 0.5))]
        print(f"  n={n:4d} deviation from sine kernel", " ".join(f"{d:+.2e}" for d in row))
