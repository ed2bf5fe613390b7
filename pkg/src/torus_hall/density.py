"""Normalization and particle-density profiles.

Squared norms over the fundamental domain come from the closed form where
one exists (flat single-particle states), from tensor Gauss-Legendre
quadrature up to four real dimensions, and from stratified Monte Carlo with
reported standard errors beyond that.  One-body densities are produced on
midpoint grids; all magnitudes are accumulated as log-magnitudes and
exponentiated once, so pair products cannot overflow.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import CurvatureMode, TorusConfig, gauss_curvature, periodic_sine
from .numerics import MCSpec, QuadratureSpec, gl_nodes, gauss_legendre, monte_carlo
from .states import lll_evolved_flat, lll_evolved_nonflat, lll_squared_norm


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass
class DensityGrid:
    """One-body density sampled at midpoint nodes of the fundamental domain."""

    nx: int
    ny: int
    values: np.ndarray          # shape (nx, ny), particles per unit area
    norm_used: float
    method: Method
    stderr: np.ndarray | None = None

    @property
    def x(self):
        return (np.arange(self.nx) + 0.5) / self.nx

    @property
    def y(self):
        return (np.arange(self.ny) + 0.5) / self.ny

    def total(self) -> float:
        """Midpoint estimate of the integral over the fundamental domain."""
        return float(np.mean(self.values))


@dataclass
class PeakReport:
    """Locations, Gaussian widths, and heights of 1D density peaks."""

    centers: list
    widths: list
    heights: list
    degenerate: bool = False


def _abs2(state, pts: np.ndarray) -> np.ndarray:
    """|Psi|^2 at flattened configuration points of shape (npts, 2n)."""
    n = state.n_particles
    xs = pts[:, 0::2] if n > 1 else pts[:, 0]
    ys = pts[:, 1::2] if n > 1 else pts[:, 1]
    return np.exp(2.0 * state.log_abs(xs, ys))


def normalize(state, n_particles: int | None = None, spec=None):
    """Squared norm of ``state`` over the n-particle fundamental domain.

    Dispatch: the closed form when the state carries one and no spec is
    given; otherwise tensor Gauss-Legendre for at most four real dimensions
    (or when a QuadratureSpec is passed) and stratified Monte Carlo beyond
    that (or when an MCSpec is passed).

    Returns
    -------
    (norm2, stderr) : stderr is 0.0 for closed-form and quadrature paths.
    """
    n = state.n_particles if n_particles is None else n_particles
    if n != state.n_particles:
        raise ValueError(f"state has {state.n_particles} particles, not {n}")
    dims = 2 * n
    if spec is None:
        if state.closed_form_norm2 is not None:
            return state.closed_form_norm2, 0.0
        spec = QuadratureSpec() if dims <= 4 else MCSpec()
    f = lambda pts: _abs2(state, pts)
    if isinstance(spec, QuadratureSpec):
        return gauss_legendre(f, dims, spec), 0.0
    return monte_carlo(f, dims, spec)


def integrated_density_y(cfg: TorusConfig, l: int, s: float = 0.0):
    """Closed-form x-integrated density of the flat level-l state.

    rho(y) = sqrt(2 N tau_2s) * sum_n exp(-2 pi N tau_2s (y + n + l/N)^2),

    a periodic train of Gaussians centered at y = -(n + l/N) that integrates
    to one over a period.  The lattice window is sized so the dropped tail
    is below 1e-15.
    """
    n_phi = cfg.n_phi
    tau2s = cfg.tau2 + s / (2 * np.pi * n_phi)
    coeff = 2 * np.pi * n_phi * tau2s
    half_width = np.sqrt(np.log(1e15) / coeff)
    m = int(np.ceil(half_width)) + 2
    shifts = np.arange(-m, m + 1) + l / n_phi

    def rho(y):
        y = np.asarray(y, dtype=float)
        return np.sqrt(2 * n_phi * tau2s) * np.sum(
            np.exp(-coeff * (y[..., None] + shifts) ** 2), axis=-1)

    return rho


def _reduced_density_quadrature(state, nodes_x, nodes_y, norm2, order):
    n = state.n_particles
    xq, wq = gl_nodes(order)
    rest_dims = n - 1
    # tensor grid over the remaining particles, flattened
    idx = np.meshgrid(*([np.arange(order)] * (2 * rest_dims)), indexing="ij")
    idx = np.stack([g.ravel() for g in idx], axis=-1)
    rest = xq[idx]
    wts = np.prod(wq[idx], axis=-1)
    out = np.empty((len(nodes_x),))
    for i, (gx, gy) in enumerate(zip(nodes_x, nodes_y)):
        xs = np.concatenate([np.full((rest.shape[0], 1), gx), rest[:, 0::2]], axis=1)
        ys = np.concatenate([np.full((rest.shape[0], 1), gy), rest[:, 1::2]], axis=1)
        vals = np.exp(2.0 * state.log_abs(xs, ys))
        out[i] = n * np.sum(vals * wts) / norm2
    return out, None


def _reduced_density_mc(state, nodes_x, nodes_y, norm2, spec, threads):
    n = state.n_particles
    rest_dims = 2 * (n - 1)
    s_axis = spec.strata_per_axis
    n_strata = s_axis**rest_dims
    per = max(2, spec.n_samples // n_strata)
    # one stratified sample set over the integrated-out particles, shared by
    # every grid node; streams are fixed by (seed, stratum), so results do
    # not depend on scheduling
    blocks = []
    for cell in range(n_strata):
        rng = np.random.default_rng(np.random.SeedSequence((spec.seed, cell)))
        u = rng.random((per, rest_dims))
        rem = cell
        for d in range(rest_dims - 1, -1, -1):
            u[:, d] = (rem % s_axis + u[:, d]) / s_axis
            rem //= s_axis
        blocks.append(u)
    rest = np.concatenate(blocks, axis=0)
    nsamp = rest.shape[0]

    def node_chunk(chunk):
        lo, hi = chunk
        m = hi - lo
        xs = np.empty((m, nsamp, n))
        ys = np.empty((m, nsamp, n))
        xs[:, :, 0] = np.asarray(nodes_x[lo:hi])[:, None]
        ys[:, :, 0] = np.asarray(nodes_y[lo:hi])[:, None]
        xs[:, :, 1:] = rest[None, :, 0::2]
        ys[:, :, 1:] = rest[None, :, 1::2]
        vals = np.exp(2.0 * state.log_abs(xs, ys))
        mean = vals.mean(axis=1)
        err = vals.std(axis=1, ddof=1) / np.sqrt(nsamp)
        return n * mean / norm2, n * err / norm2

    chunks = [(lo, min(lo + 64, len(nodes_x))) for lo in range(0, len(nodes_x), 64)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(node_chunk, chunks))
    else:
        parts = [node_chunk(c) for c in chunks]
    vals = np.concatenate([p[0] for p in parts])
    errs = np.concatenate([p[1] for p in parts])
    return vals, errs


def density_grid(state, grid=(64, 64), spec=None, threads: int = 1) -> DensityGrid:
    """One-body density of ``state`` on an (nx, ny) midpoint grid.

    For one particle this is |psi|^2 / norm; for n particles the remaining
    coordinates are integrated out by tensor quadrature (two extra real
    dimensions, i.e. n = 2) or by stratified Monte Carlo with a shared,
    deterministically seeded sample set (n >= 3 or when an MCSpec is given).
    The grid integrates to the particle number within the method tolerance.
    """
    nx, ny = grid
    gx = (np.arange(nx) + 0.5) / nx
    gy = (np.arange(ny) + 0.5) / ny
    n = state.n_particles

    if n == 1:
        norm2, _ = normalize(state, spec=spec if isinstance(spec, QuadratureSpec) else None)
        method = Method.CLOSED_FORM if state.closed_form_norm2 is not None \
            else Method.QUADRATURE
        X, Y = np.meshgrid(gx, gy, indexing="ij")
        vals = np.exp(2.0 * state.log_abs(X, Y)) / norm2
        return DensityGrid(nx, ny, vals, norm2, method)

    nodes_x, nodes_y = [a.ravel() for a in np.meshgrid(gx, gy, indexing="ij")]
    use_mc = isinstance(spec, MCSpec) or (spec is None and n >= 3)
    if use_mc:
        spec = spec if isinstance(spec, MCSpec) else MCSpec()
        norm2, _ = normalize(state, spec=spec if 2 * n > 4 else None)
        vals, errs = _reduced_density_mc(state, nodes_x, nodes_y, norm2, spec, threads)
        return DensityGrid(nx, ny, vals.reshape(nx, ny), norm2,
                           Method.MONTE_CARLO, errs.reshape(nx, ny))
    qspec = spec if isinstance(spec, QuadratureSpec) else QuadratureSpec()
    norm2, _ = normalize(state, spec=qspec)
    vals, _ = _reduced_density_quadrature(state, nodes_x, nodes_y, norm2,
                                          qspec.order_per_axis)
    return DensityGrid(nx, ny, vals.reshape(nx, ny), norm2, Method.QUADRATURE)


def iqhe_density_fast(cfg: TorusConfig, s: float = 0.0, mode: str = "flat"):
    """One-body density of the filled level as a sum over normalized levels.

    The filled-level reduced density equals the sum of the one-particle
    densities of the N orthogonal level states, which avoids the 2N-dim
    integral entirely.  ``mode`` selects the flat frame (closed-form norms)
    or the periodic sine deformation (norms by quadrature).

    Returns a vectorized callable (x, y) -> density.
    """
    n = cfg.n_phi
    if mode == "flat":
        states = [lll_evolved_flat(cfg, l, s) for l in range(n)]
        norms = [st.closed_form_norm2 for st in states]
    elif mode == "nonflat":
        states = [lll_evolved_nonflat(cfg, l, s) for l in range(n)]
        norms = [normalize(st, spec=QuadratureSpec())[0] for st in states]
    else:
        raise ValueError("mode must be 'flat' or 'nonflat'")

    def rho(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for st, nrm in zip(states, norms):
            out = out + np.abs(st(x, y)) ** 2 / nrm
        return out

    return rho


def peak_report(profile, resolution: int = 256) -> PeakReport:
    """Locate peaks of a periodic 1D profile and fit Gaussian widths.

    ``profile`` is a vectorized callable on [0, 1).  Local maxima above
    1e-3 of the global maximum are kept; each gets a quadratic fit of
    log(rho) on +-3 samples, whose vertex refines the center (mod 1) and
    whose curvature gives sigma.  A flat profile yields a degenerate report.
    """
    n = resolution
    y = (np.arange(n) + 0.5) / n
    r = np.asarray(profile(y), dtype=float)
    rmax = float(np.max(r))
    if rmax <= 0 or (rmax - np.min(r)) < 1e-9 * max(rmax, 1.0):
        return PeakReport([], [], [], degenerate=True)
    centers, widths, heights = [], [], []
    for i in range(n):
        if r[i] <= r[i - 1] or r[i] < r[(i + 1) % n] or r[i] < 1e-3 * rmax:
            continue
        idx = (i + np.arange(-3, 4)) % n
        yy = y[i] + np.arange(-3, 4) / n
        with np.errstate(divide="ignore"):
            logr = np.log(r[idx])
        if not np.all(np.isfinite(logr)):
            continue
        a2, a1, _ = np.polyfit(yy, logr, 2)
        if a2 >= 0:
            continue
        centers.append(float((-a1 / (2 * a2)) % 1.0))
        widths.append(float(np.sqrt(-1 / (2 * a2))))
        heights.append(float(r[i]))
    return PeakReport(centers, widths, heights)


def curvature_density_correlation(cfg: TorusConfig, s: float,
                                  resolution: int = 128) -> float:
    """Correlation between density deformation and curvature magnitude.

    Compares the x-averaged filled-level density at deformation s against
    its flat (s = 0) profile and correlates the absolute deviation with
    |K(y)|.  A positive value means the density deforms most where the
    curvature is largest.
    """
    y = (np.arange(resolution) + 0.5) / resolution
    xq, wq = gl_nodes(64)
    X = np.broadcast_to(xq[:, None], (64, resolution))
    Y = np.broadcast_to(y[None, :], (64, resolution))
    rho_s = iqhe_density_fast(cfg, s, "nonflat")(X, Y)
    rho_0 = iqhe_density_fast(cfg, 0.0, "flat")(X, Y)
    prof_s = np.sum(rho_s * wq[:, None], axis=0)
    prof_0 = np.sum(rho_0 * wq[:, None], axis=0)
    dev = np.abs(prof_s - prof_0)
    k = np.abs(gauss_curvature(cfg, periodic_sine(s), y, CurvatureMode.HESSIAN_H))
    dev = dev - dev.mean()
    k = k - k.mean()
    denom = np.sqrt(np.sum(dev**2) * np.sum(k**2))
    return float(np.sum(dev * k) / denom) if denom > 0 else 0.0
