"""Shared numeric kernels.

Tensor-product Gauss-Legendre quadrature on the unit cube, stratified
Monte Carlo with per-stratum error estimates, Richardson-refined central
differences, and bracketing bisection.  Everything here is a pure function
of its arguments; Monte Carlo streams are derived deterministically from
``(seed, stratum index)`` so results are reproducible regardless of how
the work is scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BudgetExceeded, NoBracket

_CHUNK = 1 << 16  # max points per integrand call, keeps peak memory bounded


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor Gauss-Legendre settings for integrals over [0,1]^dims."""

    order_per_axis: int = 48
    dims: int | None = None
    max_evals: int = 30_000_000

    def __post_init__(self):
        if self.order_per_axis < 4:
            raise ValueError("order_per_axis must be >= 4")


@dataclass(frozen=True)
class MCSpec:
    """Stratified Monte Carlo settings for integrals over [0,1]^dims."""

    n_samples: int = 1 << 20
    seed: int = 0
    strata_per_axis: int = 4
    max_evals: int = 200_000_000

    def __post_init__(self):
        if self.n_samples < 1000:
            raise ValueError("n_samples must be >= 1000")
        if self.strata_per_axis < 1:
            raise ValueError("strata_per_axis must be >= 1")


def gl_nodes(n: int, a: float = 0.0, b: float = 1.0):
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def composite_gl_nodes(a: float, b: float, pts_per_unit: int = 32, order: int = 16):
    """Composite Gauss-Legendre rule on [a, b] with roughly pts_per_unit points per unit length."""
    n_panels = max(1, int(np.ceil((b - a) * pts_per_unit / order)))
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    xs = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    ws = (half[:, None] * wg[None, :]).ravel()
    return xs, ws


def periodic_trapezoid(f, n: int = 512) -> float:
    """Integrate a period-1 function over one period with the n-point midpoint rule.

    For smooth periodic integrands this converges spectrally, which matters
    where an integral must vanish to near machine precision (e.g. total
    curvature of the torus).
    """
    y = (np.arange(n) + 0.5) / n
    return float(np.mean(f(y)))


def gauss_legendre(f, dims: int, spec: QuadratureSpec | None = None) -> float:
    """Tensor-product Gauss-Legendre integral of ``f`` over [0,1]^dims.

    Parameters
    ----------
    f : callable
        Vectorized integrand; receives an array of shape (npts, dims) and
        returns values of shape (npts,).
    dims : int
        Number of axes.
    spec : QuadratureSpec, optional
        Order and evaluation budget.

    Raises
    ------
    BudgetExceeded
        If order_per_axis**dims exceeds spec.max_evals.
    """
    spec = spec or QuadratureSpec()
    if spec.dims is not None and spec.dims != dims:
        raise ValueError(f"spec.dims={spec.dims} does not match dims={dims}")
    order = spec.order_per_axis
    total = order**dims
    if total > spec.max_evals:
        raise BudgetExceeded(
            f"{order}^{dims} = {total} evaluations exceed budget {spec.max_evals}"
        )
    x, w = gl_nodes(order)
    acc = 0.0
    # Iterate the tensor grid in fixed chunks; weights factorize per axis.
    idx = np.arange(total)
    for start in range(0, total, _CHUNK):
        ii = idx[start : start + _CHUNK]
        pts = np.empty((len(ii), dims))
        wts = np.ones(len(ii))
        rem = ii
        for d in range(dims - 1, -1, -1):
            k = rem % order
            pts[:, d] = x[k]
            wts *= w[k]
            rem = rem // order
        acc += float(np.sum(np.asarray(f(pts), dtype=float) * wts))
    return acc


def monte_carlo(f, dims: int, spec: MCSpec | None = None):
    """Stratified uniform Monte Carlo estimate of ``f`` over [0,1]^dims.

    The cube is split into strata_per_axis**dims congruent cells, each
    sampled with an independent substream seeded from (seed, cell index).
    Returns ``(mean, stderr)`` where the standard error combines the
    per-stratum sample variances.

    Raises
    ------
    BudgetExceeded
        If n_samples exceeds spec.max_evals.
    """
    spec = spec or MCSpec()
    if spec.n_samples > spec.max_evals:
        raise BudgetExceeded(
            f"{spec.n_samples} samples exceed budget {spec.max_evals}"
        )
    s = spec.strata_per_axis
    n_strata = s**dims
    per = max(2, spec.n_samples // n_strata)
    mean_acc = 0.0
    var_acc = 0.0
    for cell in range(n_strata):
        rng = np.random.default_rng(np.random.SeedSequence((spec.seed, cell)))
        u = rng.random((per, dims))
        rem = cell
        for d in range(dims - 1, -1, -1):
            u[:, d] = (rem % s + u[:, d]) / s
            rem //= s
        vals = np.asarray(f(u), dtype=float)
        mean_acc += vals.mean() / n_strata
        var_acc += vals.var(ddof=1) / per / n_strata**2
    return mean_acc, float(np.sqrt(var_acc))


def first_derivative(f, y, h: float = 1e-5):
    """Central first difference with one Richardson step (O(h^4))."""
    d1 = lambda hh: (f(y + hh) - f(y - hh)) / (2 * hh)
    return (4 * d1(h / 2) - d1(h)) / 3


def second_derivative(f, y, h: float = 1e-4):
    """Central second difference with one Richardson step (O(h^4))."""
    d2 = lambda hh: (f(y + hh) - 2 * f(y) + f(y - hh)) / hh**2
    return (4 * d2(h / 2) - d2(h)) / 3


def bisect_root(g, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Root of ``g`` on [lo, hi] by bisection.

    Raises NoBracket unless g(lo) and g(hi) have opposite (or zero) sign.
    """
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0:
        raise NoBracket(f"g({lo})={glo} and g({hi})={ghi} do not bracket a root")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if glo * gm < 0:
            hi = mid
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi)
