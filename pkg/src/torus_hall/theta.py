"""Jacobi theta functions with characteristics.

The basic object is the entire function

    theta(z, tau) = sum_n exp(i*pi*n^2*tau + 2*pi*i*n*z),      Im tau > 0,

together with its translated relatives

    theta[a; b](z, tau) = sum_n exp(i*pi*tau*(n+a)^2 + 2*pi*i*(n+a)*(z+b))
                        = exp(i*pi*a^2*tau + 2*pi*i*a*(z+b)) * theta(z + a*tau + b, tau),

which are quasi-periodic with respect to the lattice Z + tau*Z and realize
holomorphic sections of translated theta line bundles.  The odd combination
theta11 = theta[1/2; 1/2] vanishes exactly on the lattice and supplies the
relative-coordinate zeros of the many-body states built elsewhere.

Evaluation truncates the series to a symmetric window n in [-M, M] with M
chosen from a Gaussian tail bound; all arithmetic is ordinary complex
float64.  Functions are vectorized over ``z`` and pure, so they are safe to
call from any number of workers concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import NonconvergentParameter


class ThetaChar(NamedTuple):
    """Characteristic (a, b) of a translated theta function."""

    a: float
    b: float


class LatticeVector(NamedTuple):
    """Lattice element gamma = a + b*tau with integer a, b."""

    a: int
    b: int


@dataclass(frozen=True)
class TruncationPolicy:
    """Controls the symmetric series window.

    rel_eps is the target relative size of the dropped tail; max_terms caps
    the half-width M of the window (exceeding it raises
    NonconvergentParameter, signalling Im tau too small for the argument).
    """

    rel_eps: float = 1e-14
    max_terms: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.rel_eps < 1.0:
            raise ValueError("rel_eps must lie in (0, 1)")
        if self.max_terms < 3:
            raise ValueError("max_terms must be >= 3")


DEFAULT_POLICY = TruncationPolicy()


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError(f"tau={tau} must have positive imaginary part")
    return tau


def _window(im_z_max: float, tau2: float, policy: TruncationPolicy) -> int:
    # Gaussian tail bound: |term_n| ~ exp(-pi n^2 tau2 + 2 pi |n| |Im z|),
    # so terms fall below rel_eps for |n| > sqrt(-ln eps / (pi tau2)) + |Im z|/tau2.
    m = int(np.ceil(np.sqrt(max(0.0, -np.log(policy.rel_eps)) / (np.pi * tau2))
                    + im_z_max / tau2)) + 2
    if m > policy.max_terms:
        raise NonconvergentParameter(
            f"theta series needs window M={m} > max_terms={policy.max_terms} "
            f"(tau2={tau2}, |Im z|={im_z_max})"
        )
    return m


def theta(z, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY):
    """Evaluate theta(z, tau); vectorized over ``z``.

    Parameters
    ----------
    z : complex scalar or array
    tau : complex with Im tau > 0
    policy : TruncationPolicy

    Returns
    -------
    complex scalar or array matching the shape of ``z``.
    """
    tau = _check_tau(tau)
    zarr = np.asarray(z, dtype=complex)
    m = _window(float(np.max(np.abs(zarr.imag))) if zarr.size else 0.0,
                tau.imag, policy)
    n = np.arange(-m, m + 1)
    vals = np.exp(1j * np.pi * tau * n * n + 2j * np.pi * n * zarr[..., None]).sum(axis=-1)
    return vals if zarr.ndim else complex(vals)


def theta_char(char, z, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY):
    """Theta with characteristic (a, b), via the exponential-prefactor identity.

    theta[a; b](z, tau) = exp(i pi a^2 tau + 2 pi i a (z + b)) * theta(z + a tau + b, tau)
    """
    a, b = char
    tau = _check_tau(tau)
    zarr = np.asarray(z, dtype=complex)
    pref = np.exp(1j * np.pi * a * a * tau + 2j * np.pi * a * (zarr + b))
    vals = pref * theta(zarr + a * tau + b, tau, policy)
    return vals if zarr.ndim else complex(vals)


def theta_char_direct(char, z, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY):
    """Theta with characteristic evaluated by direct summation of the shifted series.

    Independent of :func:`theta_char`; the two paths must agree and are
    cross-checked in the verification suite.
    """
    a, b = char
    tau = _check_tau(tau)
    zarr = np.asarray(z, dtype=complex)
    im_max = float(np.max(np.abs(zarr.imag))) if zarr.size else 0.0
    m = _window(im_max + abs(a) * tau.imag, tau.imag, policy) + int(np.ceil(abs(a))) + 1
    n = np.arange(-m, m + 1) + a
    vals = np.exp(1j * np.pi * tau * n * n + 2j * np.pi * n * (zarr[..., None] + b)).sum(axis=-1)
    return vals if zarr.ndim else complex(vals)


def theta11(z, tau: complex, policy: TruncationPolicy = DEFAULT_POLICY):
    """The odd theta function theta[1/2; 1/2]; vanishes on Z + tau*Z."""
    return theta_char((0.5, 0.5), z, tau, policy)


def quasi_period_multiplier(char, gamma, z, tau: complex):
    """Multiplier mu with theta[a;b](z + c + d*tau) = mu * theta[a;b](z).

    For gamma = c + d*tau,

        mu = exp(-i pi tau d^2 - 2 pi i d z) * exp(2 pi i (a c - d b)).

    For the (1/2, 1/2) characteristic the flat part reduces to the familiar
    sign (-1)^(c+d) of theta11.
    """
    a, b = char
    c, d = gamma
    tau = _check_tau(tau)
    zarr = np.asarray(z, dtype=complex)
    mu = np.exp(-1j * np.pi * tau * d * d - 2j * np.pi * d * zarr) \
        * np.exp(2j * np.pi * (a * c - d * b))
    return mu if zarr.ndim else complex(mu)
