"""Recurrence coefficients, Gauss rules, and a measure given only as samples."""
import numpy as np

from opke import (
    WeightSpec,
    catalog_recurrence,
    eval_orthonormal,
    golub_welsch,
    integrate,
    load_weight_spec,
    stieltjes_recurrence,
)

cheb = WeightSpec.chebyshev()
rec = catalog_recurrence(cheb, 6)
print("chebyshev a:", rec.a)
print("chebyshev b:", rec.b)  # 1/sqrt(2), then 1/2 forever

# Golub-Welsch: the 5-point rule sits at cos((2j-1) pi / 10), equal weights
rule = golub_welsch(rec, 5)
print("nodes  ", np.round(rule.nodes, 12))
print("weights", rule.weights)

# exact up to degree 9, so the 8th moment (35/128) comes out right
print("E[t^8] =", integrate(rule, lambda t: t**8).real, "vs", 35 / 128)

# a density known only on a grid goes through the discretized Stieltjes procedure
bumpy = load_weight_spec("specs/bumpy.spec")
table_rec = stieltjes_recurrence(bumpy, 10, 200)
print("table b_1..b_10:", np.round(table_rec.b, 6))

# check orthonormality of the computed family with a Gauss rule built from it
r = golub_welsch(table_rec, 10)
p = eval_orthonormal(table_rec, 8, r.nodes)
gram = (p * r.weights) @ p.T
print("max |Gram - I| =", np.abs(gram - np.eye(9)).max())
