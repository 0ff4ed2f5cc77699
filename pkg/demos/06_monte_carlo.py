"""Metropolis sampling of the particle system as a third, independent check."""
import time

from opke import RatioQuery, TwoPointContext, WeightSpec, mcmc_ratio_average, mcmc_sample, ratio_average

spec = WeightSpec.chebyshev()
q = RatioQuery((0.0,), (1j,))

res = mcmc_sample(spec, 8, 20_000, seed=1)
print("acceptance rate", round(res.acceptance_rate, 3), "kept", len(res.samples))

t0 = time.time()
est, err = mcmc_ratio_average(spec, 8, q, 200_000, seed=12345)
ref = ratio_average(TwoPointContext.for_spec(spec, 8), q)
print(f"mcmc    {est.real:.5f} +- {err:.5f}   ({time.time() - t0:.1f}s)")
print(f"formula {ref.real:.5f}")
print(f"z-score {abs(est - ref) / err:.2f}")
