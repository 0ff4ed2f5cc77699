"""The determinantal ratio formula checked against direct integration over R^n.

For n <= 3 the average < prod D(alpha_j) / D(beta_j) > can be integrated on
a tensor Gauss grid.  The formula only needs a k x k determinant of two-point
functions, whatever n is.
"""
from opke import RatioQuery, TwoPointContext, WeightSpec, brute_ratio_average, ratio_average

spec = WeightSpec.legendre()
q = RatioQuery(alphas=(0.1, -0.6), betas=(0.3 + 0.5j, -0.2 - 0.4j))

for n in (2, 3):
    formula = ratio_average(TwoPointContext.for_spec(spec, n), q)
    brute = brute_ratio_average(spec, n, q)
    print(f"n={n} formula {formula:.12f}")
    print(f"    brute   {brute:.12f}   rel. diff {abs(formula - brute) / abs(brute):.1e}")

# n = 1 has a closed form: 1 - 2/sqrt(5) for alpha = 0, beta = 2i (arcsine law)
one = ratio_average(TwoPointContext.for_spec(WeightSpec.chebyshev(), 1), RatioQuery((0,), (2j,)))
print("n=1 chebyshev", one.real, "vs", 1 - 2 / 5**0.5)

# larger n is cheap for the formula; the average decays geometrically in n
# because the betas sit off the support
big = ratio_average(TwoPointContext.for_spec(spec, 300), q)
print("n=300", big)
