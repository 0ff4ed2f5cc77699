"""Weights, recurrence coefficients and orthonormal polynomials.

Every measure is normalized to a probability measure.  Catalog families live
on an interval ``[lo, hi]`` (default ``[-1, 1]``) through the affine map
``t = c + h*s`` with ``s`` in ``[-1, 1]``.

Index convention for a :class:`RecurrenceTable` of depth ``N``: ``a[k-1]``
and ``b[k-1]`` hold a_k and b_k for k = 1..N, with

    b_{k+1} p_{k+1}(z) = (z - a_{k+1}) p_k(z) - b_k p_{k-1}(z),   p_0 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import special

from .quadrature import adaptive_integrate

__all__ = [
    "WeightSpec",
    "RecurrenceTable",
    "catalog_recurrence",
    "stieltjes_recurrence",
    "recurrence",
    "discretize",
    "eval_orthonormal",
    "leading_coeff",
    "stieltjes_transform",
    "load_weight_spec",
    "load_table",
]

CATALOG = ("chebyshev", "legendre", "jacobi")


@dataclass(frozen=True)
class WeightSpec:
    """A probability measure on the real line.

    Use the classmethods :meth:`chebyshev`, :meth:`legendre`, :meth:`jacobi`
    and :meth:`from_table` rather than the raw constructor.
    """

    family: str
    params: tuple = ()
    support: tuple = (-1.0, 1.0)
    grid: np.ndarray | None = field(default=None, repr=False, compare=False)
    values: np.ndarray | None = field(default=None, repr=False, compare=False)
    normalization: float = 1.0

    def __post_init__(self):
        if self.family not in CATALOG + ("table",):
            raise ValueError(f"unknown weight family {self.family!r}")
        lo, hi = self.support
        if not hi > lo:
            raise ValueError(f"support must satisfy lo < hi, got {self.support}")
        if self.family == "jacobi":
            a, b = self.params
            if a <= -1 or b <= -1:
                raise ValueError("jacobi exponents must both exceed -1")

    @classmethod
    def chebyshev(cls, support=(-1.0, 1.0)):
        """Arcsine measure dt / (pi sqrt(1 - t^2))."""
        return cls("chebyshev", (), tuple(map(float, support)))

    @classmethod
    def legendre(cls, support=(-1.0, 1.0)):
        """Uniform measure dt / 2."""
        return cls("legendre", (), tuple(map(float, support)))

    @classmethod
    def jacobi(cls, alpha, beta, support=(-1.0, 1.0)):
        """Normalized (1 - t)^alpha (1 + t)^beta on [-1, 1]."""
        return cls("jacobi", (float(alpha), float(beta)), tuple(map(float, support)))

    @classmethod
    def from_table(cls, t, w):
        """Piecewise-linear density through samples ``(t, w)``.

        ``t`` must be strictly increasing and ``w`` nonnegative.  The samples
        are rescaled so that the trapezoidal mass is one.
        """
        t = np.array(t, dtype=float)
        w = np.array(w, dtype=float)
        if t.ndim != 1 or t.shape != w.shape or t.size < 2:
            raise ValueError("table needs two equal-length 1-d arrays of >= 2 samples")
        if np.any(np.diff(t) <= 0):
            raise ValueError("table grid must be strictly increasing")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("table density must be finite and nonnegative")
        mass = float(np.trapezoid(w, t))
        if mass <= 0:
            raise ValueError("table density has zero mass")
        t.setflags(write=False)
        wn = w / mass
        wn.setflags(write=False)
        return cls("table", (), (float(t[0]), float(t[-1])), t, wn, 1.0 / mass)

    # affine map to the reference interval [-1, 1]
    @property
    def _center(self):
        return 0.5 * (self.support[0] + self.support[1])

    @property
    def _half(self):
        return 0.5 * (self.support[1] - self.support[0])

    def jacobi_exponents(self):
        """Exponents (alpha, beta) for catalog families, ``None`` for tables."""
        if self.family == "chebyshev":
            return (-0.5, -0.5)
        if self.family == "legendre":
            return (0.0, 0.0)
        if self.family == "jacobi":
            return self.params
        return None

    def density(self, t):
        """Normalized density w(t); zero outside the support."""
        t = np.asarray(t, dtype=float)
        if self.family == "table":
            return np.interp(t, self.grid, self.values, left=0.0, right=0.0)
        s = (t - self._center) / self._half
        inside = np.abs(s) < 1
        sc = np.where(inside, s, 0.0)
        a, b = self.jacobi_exponents()
        if self.family == "chebyshev":
            ref = 1.0 / (np.pi * np.sqrt(1.0 - sc * sc))
        elif self.family == "legendre":
            ref = np.full_like(sc, 0.5)
        else:
            lognorm = (a + b + 1) * math.log(2.0) + special.betaln(a + 1, b + 1)
            ref = np.exp(a * np.log1p(-sc) + b * np.log1p(sc) - lognorm)
        return np.where(inside, ref / self._half, 0.0)

    def sup_density(self, lo, hi, samples=2001):
        """Supremum of w over [lo, hi], estimated on a grid."""
        t = np.linspace(lo, hi, samples)
        if self.family == "table":
            inner = self.grid[(self.grid > lo) & (self.grid < hi)]
            t = np.concatenate([t, inner])
        return float(np.max(self.density(t)))

    def moment(self, j):
        """Exact j-th moment for catalog families on [-1, 1]."""
        if self.family == "table":
            raise ValueError("exact moments are only available for catalog families")
        a, b = self.jacobi_exponents()
        c, h = self._center, self._half
        # integrating d/ds[(1-s)^(a+1) (1+s)^(b+1) s^r] gives a three-term
        # recurrence free of the cancellation in a binomial expansion
        ms = [1.0, (b - a) / (a + b + 2)]
        for r in range(1, j):
            ms.append(((b - a) * ms[r] + r * ms[r - 1]) / (r + a + b + 2))
        return sum(math.comb(j, r) * c ** (j - r) * h**r * ms[r] for r in range(j + 1))


@dataclass(frozen=True)
class RecurrenceTable:
    """Jacobi-matrix coefficients a_1..a_N (diagonal) and b_1..b_N (> 0)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("a and b must be 1-d arrays of equal length")
        if np.any(b <= 0):
            raise ValueError("recurrence coefficients b_k must be positive")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def depth(self):
        return int(self.a.size)

    def gammas(self):
        """Leading coefficients gamma_0..gamma_N."""
        return np.concatenate([[1.0], 1.0 / np.cumprod(self.b)])


def _jacobi_coefficients(alpha, beta, N):
    a = np.empty(N)
    b2 = np.empty(N)
    ab = alpha + beta
    a[0] = (beta - alpha) / (ab + 2.0)
    for k in range(1, N):
        s = 2.0 * k + ab
        a[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0))
    # squared off-diagonals; k = 1 is written with the (k + ab)/(2k + ab - 1)
    # factor cancelled, which matters when ab = -1
    b2[0] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) ** 2 * (3.0 + ab))
    for k in range(2, N + 1):
        s = 2.0 * k + ab
        b2[k - 1] = (
            4.0 * k * (k + alpha) * (k + beta) * (k + ab)
            / (s * s * (s + 1.0) * (s - 1.0))
        )
    return a, np.sqrt(b2)


def catalog_recurrence(spec, N):
    """Closed-form recurrence coefficients to depth ``N`` for a catalog family."""
    if spec.family == "table":
        raise ValueError("tabulated weights have no closed form; use stieltjes_recurrence")
    if N < 1:
        raise ValueError("N must be >= 1")
    if spec.family == "chebyshev":
        a = np.zeros(N)
        b = np.full(N, 0.5)
        b[0] = math.sqrt(0.5)
    elif spec.family == "legendre":
        k = np.arange(1, N + 1, dtype=float)
        a = np.zeros(N)
        b = k / np.sqrt(4.0 * k * k - 1.0)
    else:
        a, b = _jacobi_coefficients(*spec.params, N)
    return RecurrenceTable(spec._center + spec._half * a, spec._half * b)


def discretize(spec, m, min_degree=0):
    """Discrete probability measure (nodes, weights) approximating ``spec``.

    Catalog families use the m-point Gauss-Jacobi rule from
    ``scipy.special.roots_jacobi``, which is independent of the recurrence
    code in this module.  Tables use composite Gauss-Legendre on each grid
    cell of the piecewise-linear density, with at least ``m`` nodes in total
    and enough per cell to integrate polynomials of degree ``min_degree``
    against the interpolant exactly.
    """
    if spec.family != "table":
        a, b = spec.jacobi_exponents()
        # scipy's weight is (1 - x)^alpha (1 + x)^beta
        x, w = special.roots_jacobi(m, a, b)
        return spec._center + spec._half * x, w / w.sum()
    t, v = spec.grid, spec.values
    cells = t.size - 1
    q = max(2, -(-m // cells), (min_degree + 3) // 2)
    x, gw = np.polynomial.legendre.leggauss(q)
    left, right = t[:-1, None], t[1:, None]
    half = 0.5 * (right - left)
    nodes = 0.5 * (left + right) + half * x[None, :]
    dens = np.interp(nodes, t, v)
    weights = half * gw[None, :] * dens
    nodes, weights = nodes.ravel(), weights.ravel()
    keep = weights > 0
    nodes, weights = nodes[keep], weights[keep]
    return nodes, weights / weights.sum()


def stieltjes_recurrence(spec, N, m):
    """Recurrence coefficients by the discretized Stieltjes procedure.

    Runs the Stieltjes (Lanczos) recursion on an ``m``-point discrete
    approximation of the measure.  Raises ``ValueError`` when the discrete
    measure is exhausted (b_k collapses to zero).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if m < 4 * N:
        raise ValueError(f"need m >= 4N discretization points (m={m}, N={N})")
    if spec.family == "table" and spec.grid.size < 2 * m:
        raise ValueError(
            f"table has {spec.grid.size} samples; at least 2m = {2 * m} are required"
        )
    x, w = discretize(spec, m, min_degree=2 * N + 1)
    a = np.empty(N)
    b = np.empty(N)
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    b_prev = 0.0
    for k in range(N):
        a[k] = np.dot(w, x * q * q)
        r = (x - a[k]) * q - b_prev * q_prev
        # re-orthogonalize against the two previous vectors
        r -= np.dot(w, r * q) * q
        if k > 0:
            r -= np.dot(w, r * q_prev) * q_prev
        b2 = np.dot(w, r * r)
        if not b2 > 1e-28 * max(1.0, float(np.max(np.abs(x))) ** 2):
            raise ValueError(
                f"Stieltjes procedure lost positivity at k={k + 1}; the discrete "
                f"measure supports depth {k} only"
            )
        b[k] = math.sqrt(b2)
        q_prev, q, b_prev = q, r / b[k], b[k]
    return RecurrenceTable(a, b)


def recurrence(spec, N, m=None):
    """Recurrence table of depth ``N``: closed form if available, else Stieltjes."""
    if spec.family != "table":
        return catalog_recurrence(spec, N)
    if m is None:
        m = max(4 * N, spec.grid.size // 2)
    return stieltjes_recurrence(spec, N, m)


def eval_orthonormal(rec, n, z):
    """Values p_0(z), ..., p_n(z) stacked along the first axis.

    ``z`` may be a complex scalar or array; the result has shape
    ``(n + 1,) + shape(z)``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= rec.depth:
        raise ValueError(f"degree {n} needs a recurrence table deeper than {rec.depth}")
    z = np.asarray(z)
    dtype = np.result_type(z.dtype, float)
    out = np.empty((n + 1,) + z.shape, dtype=dtype)
    out[0] = 1.0
    if n >= 1:
        out[1] = (z - rec.a[0]) / rec.b[0]
    for k in range(1, n):
        out[k + 1] = ((z - rec.a[k]) * out[k] - rec.b[k - 1] * out[k - 1]) / rec.b[k]
    return out


def leading_coeff(rec, n):
    """gamma_n = 1 / (b_1 ... b_n)."""
    if n < 0 or n >= rec.depth:
        raise ValueError(f"n={n} outside the recurrence depth {rec.depth}")
    return float(1.0 / np.prod(rec.b[:n]))


def _jacobi_cauchy_ref(a, b, beta, tol):
    """G on [-1, 1] for the normalized Jacobi weight, by adaptive quadrature.

    Each half of the interval is mapped so the endpoint factor (1 -+ s)^e
    turns into a constant Jacobian.
    """
    lognorm = (a + b + 1) * math.log(2.0) + special.betaln(a + 1, b + 1)
    norm = math.exp(-lognorm)
    pa = 1.0 / (a + 1.0)
    pb = 1.0 / (b + 1.0)

    def right(u):
        # 1 - s = u^pa, u in [0, 1]
        s = 1.0 - u**pa
        return norm * pa * (1.0 + s) ** b / (s - beta)

    def left(u):
        # 1 + s = u^pb, u in [0, 1]
        s = u**pb - 1.0
        return norm * pb * (1.0 - s) ** a / (s - beta)

    return adaptive_integrate(right, 0.0, 1.0, tol / 2) + adaptive_integrate(
        left, 0.0, 1.0, tol / 2
    )


def _table_cauchy(t, v, beta):
    # exact integral of the piecewise-linear density against 1/(t - beta)
    t0, t1 = t[:-1], t[1:]
    slope = (v[1:] - v[:-1]) / (t1 - t0)
    icpt = v[:-1] - slope * t0
    logs = np.log((t1 - beta) / (t0 - beta))
    return complex(np.sum(slope * (t1 - t0) + (icpt + slope * beta) * logs))


def stieltjes_transform(spec, beta, tol=1e-10):
    """G(beta) = integral of dmu(t) / (t - beta) for non-real ``beta``."""
    beta = complex(beta)
    if beta.imag == 0:
        raise ValueError("Stieltjes transform needs a non-real argument (pole on the support)")
    if spec.family == "table":
        return _table_cauchy(spec.grid, spec.values, beta)
    h = spec._half
    s = (beta - spec._center) / h
    if spec.family == "chebyshev":
        g = -1.0 / (np.sqrt(s - 1.0) * np.sqrt(s + 1.0))
    elif spec.family == "legendre":
        g = 0.5 * np.log((s - 1.0) / (s + 1.0))
    else:
        g = _jacobi_cauchy_ref(*spec.params, s, tol * h)
    return complex(g / h)


def _parse_float(text):
    return float(text.strip().replace("−", "-"))


def load_table(path):
    """Read a two-column (t, w) text file; a non-numeric header line is skipped."""
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p for p in line.replace(",", " ").replace(";", " ").split() if p]
        try:
            vals = [_parse_float(p) for p in parts[:2]]
        except ValueError:
            if rows:
                raise ValueError(f"{path}: unparsable row {line!r}") from None
            continue
        if len(vals) != 2:
            raise ValueError(f"{path}: expected two columns, got {line!r}")
        rows.append(vals)
    data = np.array(rows, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2:
        raise ValueError(f"{path}: fewer than two samples")
    return WeightSpec.from_table(data[:, 0], data[:, 1])


def load_weight_spec(path):
    """Parse a ``key=value`` weight-spec file."""
    path = Path(path)
    keys = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        keys[key.lower()] = value
    family = keys.get("family", "").lower()
    if family == "table":
        if "file" not in keys:
            raise ValueError(f"{path}: table family needs file=<path>")
        table = Path(keys["file"])
        if not table.is_absolute():
            table = path.parent / table
        return load_table(table)
    support = (-1.0, 1.0)
    if "support" in keys:
        lo, hi = (_parse_float(s) for s in keys["support"].split(","))
        support = (lo, hi)
    if family == "chebyshev":
        return WeightSpec.chebyshev(support)
    if family == "legendre":
        return WeightSpec.legendre(support)
    if family == "jacobi":
        return WeightSpec.jacobi(
            _parse_float(keys.get("alpha", "0")), _parse_float(keys.get("beta", "0")), support
        )
    raise ValueError(f"{path}: unknown or missing family {family!r}")
