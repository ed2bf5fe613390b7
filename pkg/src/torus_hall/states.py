"""Lowest-Landau-level and many-body quantum Hall states on the torus.

In the unitary (Landau) gauge the one-particle states of flux N_phi are

    psi_l(x, y) = theta[l/N_phi; 0](N_phi z, N_phi tau) * exp(i pi N_phi tau y^2),

with z = x + tau*y and l = 0..N_phi-1; they transform under lattice shifts
with the unitary multipliers exp(-2 pi i N_phi b x).  The filled level at
nu = 1 and the nu = 1/k states are assembled from a center-of-mass theta
factor, pairwise theta11 zeros, and a Gaussian weight.

Deformations act in two ways:

* flat (quadratic Hamiltonian on the cover): every theta argument and the
  Gaussian are rebased in the evolved frame tau_s = tau + i*s/(2*pi*D),
  z_s = x + tau_s*y, with D = N_phi for integer filling and D = k*N_e for
  fractional filling;
* periodic (H(y) = sin^2(2*pi*y)): the Hamiltonian flow pulls every particle
  coordinate back, z_j -> z_j + i*s*sin(4*pi*y_j)/N_phi, each particle
  contributes the prequantum weight exp(s*(sin^2(2*pi*y_j)
  - 2*pi*y_j*sin(4*pi*y_j))), tau is unchanged, and the quantum operator
  contributes a constant spectral factor exp(-s*sin^2(2*pi*a)) built from the
  center-of-mass characteristic a.

Evaluators are vectorized over particle configurations (arrays of shape
(..., n)), immutable after construction, and expose a log-magnitude path so
densities can be formed without overflowing the pair products.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geometry import TorusConfig, flat_frame
from .theta import theta_char, theta11

__all__ = [
    "ManyBodyConfig", "StateKind", "SpectralData", "SingleParticleState",
    "ManyBodyState", "lll_state", "lll_evolved_flat", "lll_evolved_nonflat",
    "spectral_data", "iqhe_state", "iqhe_evolved_flat", "iqhe_evolved_nonflat",
    "laughlin_state", "laughlin_evolved_flat", "laughlin_evolved_nonflat",
    "lll_squared_norm", "half_form_weight", "half_form_squared_norm",
]


class StateKind(enum.Enum):
    SINGLE_PARTICLE = "single_particle"
    INTEGER = "integer"
    LAUGHLIN = "laughlin"


@dataclass(frozen=True)
class ManyBodyConfig:
    """Electron count, odd denominator k (k=1 for integer filling), and
    degeneracy index l in [0, k)."""

    n_e: int
    k: int = 1
    l: int = 0

    def __post_init__(self):
        if self.n_e < 1:
            raise ValueError("n_e must be >= 1")
        if self.k < 1 or self.k % 2 == 0:
            raise ValueError("k must be a positive odd integer")
        if not 0 <= self.l < self.k:
            raise ValueError(f"l={self.l} outside [0, {self.k})")

    @property
    def n_phi(self) -> int:
        return self.k * self.n_e

    def torus(self, tau: complex) -> TorusConfig:
        return TorusConfig(tau, self.n_phi)


@dataclass(frozen=True)
class SpectralData:
    """Eigendata of the finite Heisenberg generator S and of the quantum
    operator built from it for the sine Hamiltonian."""

    l: int
    n_phi: int
    s_eigenvalue: complex
    qh_eigenvalue: float

    @staticmethod
    def qh_from_s_eigenvalue(lam: complex) -> float:
        """((lam - 1/lam) / 2i)^2, real for unimodular lam."""
        return float((((lam - 1.0 / lam) / 2j) ** 2).real)


def spectral_data(cfg: TorusConfig, l: int) -> SpectralData:
    """S-eigenvalue exp(-2 pi i l / N_phi) and sine-Hamiltonian eigenvalue
    sin^2(2 pi l / N_phi) of the l-th level state."""
    if not 0 <= l < cfg.n_phi:
        raise ValueError(f"l={l} outside [0, {cfg.n_phi})")
    lam = complex(np.exp(-2j * np.pi * l / cfg.n_phi))
    return SpectralData(l, cfg.n_phi, lam, float(np.sin(2 * np.pi * l / cfg.n_phi) ** 2))


# ---------------------------------------------------------------------------
# closed-form norms (flat family)

def lll_squared_norm(cfg: TorusConfig, s: float = 0.0) -> float:
    """Squared L2 norm over the fundamental domain, 1/sqrt(2 N_phi tau_2s)."""
    tau2s = flat_frame(cfg, s, cfg.n_phi).tau_s.imag
    return 1.0 / np.sqrt(2 * cfg.n_phi * tau2s)


def half_form_weight(cfg: TorusConfig, s: float = 0.0) -> float:
    """Squared norm sqrt(tau_2s / (2 pi N_phi)) of the half-form frame."""
    tau2s = flat_frame(cfg, s, cfg.n_phi).tau_s.imag
    return float(np.sqrt(tau2s / (2 * np.pi * cfg.n_phi)))


def half_form_squared_norm(cfg: TorusConfig, s: float = 0.0) -> float:
    """Half-form-corrected squared norm; equals 1/(2 N_phi sqrt(pi)) for every s."""
    return lll_squared_norm(cfg, s) * half_form_weight(cfg, s)


# ---------------------------------------------------------------------------
# single-particle states

class SingleParticleState:
    """Callable one-particle wavefunction psi(x, y) with metadata.

    ``closed_form_norm2`` is set for the flat family, where the squared L2
    norm is known in closed form; it is None for periodic deformations,
    whose norms are obtained by quadrature.
    """

    n_particles = 1

    def __init__(self, cfg, l, s, kind_label, fn, closed_form_norm2=None,
                 spectral_factor=1.0):
        self.cfg = cfg
        self.l = l
        self.s = s
        self.deformation = kind_label
        self.closed_form_norm2 = closed_form_norm2
        self.spectral_factor = spectral_factor
        self._fn = fn

    def __call__(self, x, y):
        return self._fn(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def value(self, x, y):
        return self(x, y)

    def log_abs(self, x, y):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self(x, y)))


def lll_state(cfg: TorusConfig, l: int) -> SingleParticleState:
    """Level-l lowest-Landau-level state in the unitary gauge."""
    if not 0 <= l < cfg.n_phi:
        raise ValueError(f"l={l} outside [0, {cfg.n_phi})")
    return lll_evolved_flat(cfg, l, 0.0)


def lll_evolved_flat(cfg: TorusConfig, l: int, s: float) -> SingleParticleState:
    """Flat evolution of the level-l state: same formula in the frame
    (z_s, tau_s); at s=0 this is the base state."""
    if not 0 <= l < cfg.n_phi:
        raise ValueError(f"l={l} outside [0, {cfg.n_phi})")
    n = cfg.n_phi
    frame = flat_frame(cfg, s, n)
    tau_s = frame.tau_s

    def fn(x, y):
        z = frame.z(x, y)
        return theta_char((l / n, 0.0), n * z, n * tau_s) \
            * np.exp(1j * np.pi * n * tau_s * y * y)

    return SingleParticleState(cfg, l, s, "flat", fn,
                               closed_form_norm2=lll_squared_norm(cfg, s))


def lll_evolved_nonflat(cfg: TorusConfig, l: int, s: float) -> SingleParticleState:
    """Evolution of the level-l state under the periodic sine Hamiltonian.

    The coordinate acquires an imaginary shift proportional to H'(y) while
    tau stays fixed; the prequantum weight and the constant spectral factor
    exp(-s sin^2(2 pi l / N_phi)) multiply the theta factor.
    """
    if not 0 <= l < cfg.n_phi:
        raise ValueError(f"l={l} outside [0, {cfg.n_phi})")
    if s < 0:
        raise ValueError("s must be >= 0")
    n = cfg.n_phi
    tau = cfg.tau
    spectral = float(np.exp(-s * np.sin(2 * np.pi * l / n) ** 2))

    def fn(x, y):
        z_is = x + tau * y + 1j * s * np.sin(4 * np.pi * y) / n
        pref = np.exp(s * np.sin(2 * np.pi * y) ** 2
                      - 2 * np.pi * s * y * np.sin(4 * np.pi * y))
        return spectral * pref \
            * theta_char((l / n, 0.0), n * z_is, n * tau) \
            * np.exp(1j * np.pi * n * tau * y * y)

    return SingleParticleState(cfg, l, s, "periodic_sine", fn,
                               spectral_factor=spectral)


# ---------------------------------------------------------------------------
# many-body states

class ManyBodyState:
    """Antisymmetric n-particle wavefunction on the torus.

    The value is the product of a center-of-mass theta factor, theta11 pair
    factors to the k-th power, a Gaussian weight, and (for periodic
    deformations) per-particle prequantum weights.  ``log_abs`` accumulates
    log-magnitudes factor by factor, so large pair products cannot overflow.
    Evaluators accept coordinate arrays of shape (..., n).
    """

    def __init__(self, kind, n_particles, k, cm_char, tau_theta, gauss_tau,
                 coord_fn, log_weight_fn, scalar, cfg, s, deformation):
        self.kind = kind
        self.n_particles = n_particles
        self.k = k
        self.cm_char = cm_char
        self.cfg = cfg
        self.s = s
        self.deformation = deformation
        self.closed_form_norm2 = None
        self._tau_theta = tau_theta
        self._gauss_tau = gauss_tau
        self._coord = coord_fn
        self._log_weight = log_weight_fn
        self._scalar = scalar

    def _pieces(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.shape[-1] != self.n_particles:
            raise ValueError(f"expected {self.n_particles} particles, got {xs.shape[-1]}")
        z = self._coord(xs, ys)
        n, k = self.n_particles, self.k
        cm = theta_char(self.cm_char, k * z.sum(axis=-1), k * self._tau_theta)
        pairs = [theta11(z[..., i] - z[..., j], self._tau_theta)
                 for i in range(n) for j in range(i + 1, n)]
        log_gauss = 1j * np.pi * self._gauss_tau * (k * n) * np.sum(ys**2, axis=-1)
        log_w = self._log_weight(xs, ys)
        return cm, pairs, log_gauss, log_w

    def value(self, xs, ys):
        cm, pairs, log_gauss, log_w = self._pieces(xs, ys)
        out = self._scalar * cm * np.exp(log_gauss + log_w)
        for p in pairs:
            out = out * p**self.k
        return out

    __call__ = value

    def log_abs(self, xs, ys):
        cm, pairs, log_gauss, log_w = self._pieces(xs, ys)
        with np.errstate(divide="ignore"):
            acc = np.log(abs(self._scalar)) + np.log(np.abs(cm)) \
                + log_gauss.real + log_w.real
            for p in pairs:
                acc = acc + self.k * np.log(np.abs(p))
        return acc


def _flat_many_body(kind, mb: ManyBodyConfig, tau: complex, s: float) -> ManyBodyState:
    cfg = mb.torus(tau)
    frame = flat_frame(cfg, s, mb.n_phi)
    tau_s = frame.tau_s
    a = (mb.n_e - 1) / (2 * mb.k) + mb.l / mb.k
    b = (mb.n_e - 1) / 2

    def coord(xs, ys):
        return xs + tau_s * ys

    def log_weight(xs, ys):
        return np.zeros(xs.shape[:-1], dtype=complex)

    return ManyBodyState(kind, mb.n_e, mb.k, (a, b), tau_s, tau_s,
                         coord, log_weight, 1.0, cfg, s, "flat")


def _nonflat_many_body(kind, mb: ManyBodyConfig, tau: complex, s: float) -> ManyBodyState:
    if s < 0:
        raise ValueError("s must be >= 0")
    cfg = mb.torus(tau)
    n_phi = mb.n_phi
    a = (mb.n_e - 1) / (2 * mb.k) + mb.l / mb.k
    b = (mb.n_e - 1) / 2
    scalar = float(np.exp(-s * np.sin(2 * np.pi * a) ** 2))

    def coord(xs, ys):
        # pullback by the Hamiltonian flow of H = sin^2(2 pi y)
        return xs + tau * ys + 1j * s * np.sin(4 * np.pi * ys) / n_phi

    def log_weight(xs, ys):
        w = s * (np.sin(2 * np.pi * ys) ** 2
                 - 2 * np.pi * ys * np.sin(4 * np.pi * ys))
        return np.sum(w, axis=-1).astype(complex)

    return ManyBodyState(kind, mb.n_e, mb.k, (a, b), tau, tau,
                         coord, log_weight, scalar, cfg, s, "periodic_sine")


def iqhe_state(cfg: TorusConfig) -> ManyBodyState:
    """Filled lowest level at nu = 1 with N = N_phi particles."""
    if cfg.n_phi < 2:
        raise ValueError("integer state needs N_phi >= 2")
    return iqhe_evolved_flat(cfg, 0.0)


def iqhe_evolved_flat(cfg: TorusConfig, s: float) -> ManyBodyState:
    """Flat evolution of the filled-level state (frame tau_s, denominator N)."""
    if cfg.n_phi < 2:
        raise ValueError("integer state needs N_phi >= 2")
    mb = ManyBodyConfig(n_e=cfg.n_phi, k=1, l=0)
    return _flat_many_body(StateKind.INTEGER, mb, cfg.tau, s)


def iqhe_evolved_nonflat(cfg: TorusConfig, s: float) -> ManyBodyState:
    """Sine-Hamiltonian evolution of the filled-level state."""
    if cfg.n_phi < 2:
        raise ValueError("integer state needs N_phi >= 2")
    mb = ManyBodyConfig(n_e=cfg.n_phi, k=1, l=0)
    return _nonflat_many_body(StateKind.INTEGER, mb, cfg.tau, s)


def laughlin_state(mb: ManyBodyConfig, tau: complex) -> ManyBodyState:
    """nu = 1/k ground state with degeneracy index mb.l; reduces to the
    integer state at k = 1."""
    return _flat_many_body(StateKind.LAUGHLIN, mb, tau, 0.0)


def laughlin_evolved_flat(mb: ManyBodyConfig, tau: complex, s: float) -> ManyBodyState:
    """Flat evolution of the nu = 1/k state (frame denominator k*N_e)."""
    return _flat_many_body(StateKind.LAUGHLIN, mb, tau, s)


def laughlin_evolved_nonflat(mb: ManyBodyConfig, tau: complex, s: float) -> ManyBodyState:
    """Sine-Hamiltonian evolution of the nu = 1/k state."""
    return _nonflat_many_body(StateKind.LAUGHLIN, mb, tau, s)
