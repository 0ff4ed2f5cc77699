"""Acceptance criteria, one test each, at the stated tolerances and time budgets.

Run alone with ``pytest -m acceptance``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import itertools
import math
import time

import numpy as np
import pytest

from opke import (
    LimitParams,
    RatioQuery,
    TwoPointContext,
    WeightSpec,
    brute_partition,
    brute_ratio_average,
    catalog_recurrence,
    eval_orthonormal,
    golub_welsch,
    integrate,
    KernelEvaluator,
    kernel_normalized_diag,
    cauchy_tail,
    limit_ratio_average,
    mcmc_ratio_average,
    ratio_average,
    scaled_cauchy,
    scaled_kernel,
    scaled_ratio_average,
    sinc_kernel,
    w_limit_closed,
    w_limit_integral,
    w_two_point,
    w_two_point_cd,
)

pytestmark = pytest.mark.acceptance

CHE = WeightSpec.chebyshev()
LEG = WeightSpec.legendre()
EPI = 0.04321391826377225  # e^{-pi}


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed <= self.seconds, f"took {self.elapsed:.1f}s > {self.seconds}s"


def _random_query(rng, k):
    while True:
        alphas = tuple(rng.uniform(-1.5, 1.5, size=k))
        betas = tuple(
            complex(rng.uniform(-1.5, 1.5), rng.choice([-1, 1]) * rng.uniform(0.3, 1.5))
            for _ in range(k)
        )
        if min((abs(u - v) for u, v in itertools.combinations(alphas + betas, 2)), default=1) > 0.1:
            return RatioQuery(alphas, betas)


def test_ac01_formula_matches_brute_force():
    rng = np.random.default_rng(20240101)
    worst = 0.0
    with Budget(60):
        for spec in (CHE, LEG):
            for n in (1, 2, 3):
                ctx = TwoPointContext.for_spec(spec, n)
                for k in (1, 2):
                    if k > n:
                        continue
                    for _ in range(20):
                        q = _random_query(rng, k)
                        f = ratio_average(ctx, q)
                        b = brute_ratio_average(spec, n, q, m=80)
                        worst = max(worst, abs(f - b) / abs(b))
    print(f"AC1 worst relative discrepancy {worst:.2e}")
    assert worst <= 1e-7


def test_ac02_two_point_representations_agree():
    # (beta, alpha) drawn from the bulk scaling window x + O(1)/Kt, the regime
    # the scaled limits use; far from the support W_n is exponentially small
    # and neither form has relative accuracy in double precision
    rng = np.random.default_rng(7)
    worst = 0.0
    with Budget(10):
        for spec in (CHE, LEG, WeightSpec.jacobi(0.5, -0.3)):
            for _ in range(50):
                n = int(rng.integers(1, 41))
                x = rng.uniform(-0.8, 0.8)
                ctx = TwoPointContext.for_spec(spec, n)
                kt = kernel_normalized_diag(ctx.ev, x)
                a = x + rng.uniform(-2, 2) / kt
                b = x + complex(rng.uniform(-2, 2), rng.choice([-1, 1]) * rng.uniform(0.1, 1)) / kt
                u = w_two_point(ctx, b, a)
                v = w_two_point_cd(ctx, b, a)
                worst = max(worst, abs(u - v) / abs(u))
    print(f"AC2 worst relative difference {worst:.2e}")
    assert worst <= 1e-10


def test_ac03_chebyshev_headline_convergence():
    q = RatioQuery((0.0,), (1j,))
    with Budget(30):
        errs = [
            abs(scaled_ratio_average(TwoPointContext.for_spec(CHE, n), 0.0, q) - EPI)
            for n in (16, 32, 64, 128)
        ]
    print("AC3 errors " + " ".join(f"{e:.3e}" for e in errs))
    assert all(e1 <= 1.1 * e0 for e0, e1 in zip(errs, errs[1:]))
    assert errs[-1] <= 0.02


def test_ac04_k2_limit_determinant():
    q = RatioQuery((0.0, 0.5), (1j, 1 + 1j))
    with Budget(30):
        val = scaled_ratio_average(TwoPointContext.for_spec(CHE, 128), 0.0, q)
        lim = limit_ratio_average(q)
    print(f"AC4 scaled {val:.6g} limit {lim:.6g}")
    assert abs(val - lim) <= 0.05


def test_ac05_kernel_universality():
    with Budget(10):
        worst = 0.0
        for spec in (CHE, LEG):
            ev = KernelEvaluator.for_spec(spec, 128)
            for a, b in ((0, 1), (0.25, -0.25), (0.5, 0.5)):
                worst = max(worst, abs(scaled_kernel(ev, 0.0, a, b) - sinc_kernel(a, b)))
    print(f"AC5 worst deviation from the sine kernel {worst:.3e}")
    assert worst <= 0.02


def test_ac06_cauchy_transform_universality():
    with Budget(10):
        val = scaled_cauchy(TwoPointContext.for_spec(CHE, 128), 0.0, 0.0, 1j)
    err = abs(val - 1j * (1 - EPI))
    print(f"AC6 deviation {err:.3e}")
    assert err <= 0.05


def test_ac07_limit_closed_form_vs_integral():
    rng = np.random.default_rng(99)
    params = LimitParams(truncation=200)
    with Budget(20):
        worst = 0.0
        for _ in range(50):
            alpha = rng.uniform(-3, 3)
            beta = complex(rng.uniform(-3, 3), rng.choice([-1, 1]) * rng.uniform(0.05, 5))
            res = w_limit_integral(beta, alpha, params)
            err = abs(res.value - w_limit_closed(beta, alpha))
            assert err <= res.tail_bound
            worst = max(worst, err)
    print(f"AC7 worst |closed - integral| {worst:.3e}")
    assert worst <= 5e-3


def test_ac08_tail_diagnostic():
    with Budget(20):
        res = cauchy_tail(TwoPointContext.for_spec(CHE, 256), 0.0, 0.0, 1j, M=2.0, J=(-0.5, 0.5))
    print(f"AC8 tail {res.tail:.4e} bound {res.bound:.4e}")
    assert res.tail <= res.bound


def test_ac09_gauss_and_orthonormality():
    with Budget(20):
        for spec in (CHE, LEG, WeightSpec.jacobi(0.5, 1.5)):
            rec = catalog_recurrence(spec, 13)
            rule = golub_welsch(rec, 12)
            p = eval_orthonormal(rec, 10, rule.nodes)
            assert np.max(np.abs((p * rule.weights) @ p.T - np.eye(11))) <= 1e-10
            for m in range(1, 13):
                r = golub_welsch(rec, m)
                for j in range(2 * m):
                    exact = spec.moment(j)
                    got = integrate(r, lambda t: t**j).real
                    # odd moments of symmetric weights vanish, so floor the scale
                    assert abs(got - exact) <= 1e-12 * max(abs(exact), 1e-2)
            for n in (1, 2, 3):
                g = rec.gammas()
                heine = math.factorial(n) * float(np.prod(g[:n] ** -2.0))
                assert abs(brute_partition(spec, n) - heine) <= 1e-8 * heine


def test_ac10_mcmc_consistency():
    q = RatioQuery((0.0,), (1j,))
    with Budget(60):
        ref = ratio_average(TwoPointContext.for_spec(CHE, 8), q)
        est, err = mcmc_ratio_average(CHE, 8, q, 200_000, seed=12345)
    print(f"AC10 mcmc {est:.5g} +- {err:.2g}, formula {ref:.5g}")
    assert err <= 0.02
    assert abs(est - ref) <= 4 * err
