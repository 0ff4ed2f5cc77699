"""Averages of ratios of random characteristic polynomials for orthogonal
polynomial ensembles, with their sine-kernel scaling limits."""

__version__ = "0.1.0"

from ._errors import ConvergenceError, HypothesisError
from .cauchy import (
    TwoPointContext,
    cauchy_orthopoly,
    kernel_cauchy,
    cauchy_tail,
    scaled_cauchy,
    w_two_point,
    w_two_point_cd,
)
from .kernel import (
    KernelEvaluator,
    kernel_cd,
    kernel_normalized_diag,
    kernel_sum,
    scaled_kernel,
)
from .limits import LimitParams, cauchy_limit, sinc_kernel, w_limit_closed, w_limit_integral
from .oracle import (
    EnsembleDensity,
    brute_partition,
    brute_ratio_average,
    mcmc_ratio_average,
    mcmc_sample,
)
from .orthopoly import (
    RecurrenceTable,
    WeightSpec,
    catalog_recurrence,
    eval_orthonormal,
    leading_coeff,
    load_weight_spec,
    recurrence,
    stieltjes_recurrence,
    stieltjes_transform,
)
from .quadrature import QuadratureRule, adaptive_integrate, golub_welsch, integrate, tridiag_eigen
from .ratios import (
    RatioQuery,
    limit_ratio_average,
    ratio_average,
    scaled_ratio_average,
    vandermonde_factor,
)
