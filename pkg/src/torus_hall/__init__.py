"""Quantum Hall states on the two-torus under coherent-state deformations.

Library layout:

* :mod:`torus_hall.theta` -- Jacobi theta functions with characteristics;
* :mod:`torus_hall.geometry` -- torus configuration, deformation families,
  deformed Hermitian metric, Gauss curvature, critical deformation time;
* :mod:`torus_hall.states` -- lowest-level, integer, and fractional states
  and their flat / periodic deformations;
* :mod:`torus_hall.density` -- norms, density grids, peak diagnostics;
* :mod:`torus_hall.plane` -- the flat-plane coherent-state transform track;
* :mod:`torus_hall.numerics` -- quadrature, Monte Carlo, differences, roots;
* :mod:`torus_hall.cli` -- reproducible CSV/JSON experiment runner.
"""

from .exceptions import (
    BudgetExceeded,
    NoBracket,
    NonconvergentParameter,
    NonPeriodicHamiltonian,
    PastCriticalDeformation,
    TorusHallError,
)
from .geometry import (
    CurvatureMode,
    Deformation,
    FlatFrame,
    HamiltonianKind,
    TorusConfig,
    TorusPoint,
    critical_s,
    flat_frame,
    flat_quadratic,
    gauss_bonnet_total,
    gauss_curvature,
    hamiltonian_values,
    hermitian_metric_h,
    periodic_sine,
)
from .numerics import (
    MCSpec,
    QuadratureSpec,
    bisect_root,
    gauss_legendre,
    monte_carlo,
    second_derivative,
)
from .theta import (
    LatticeVector,
    ThetaChar,
    TruncationPolicy,
    quasi_period_multiplier,
    theta,
    theta11,
    theta_char,
    theta_char_direct,
)
from .states import (
    ManyBodyConfig,
    ManyBodyState,
    SingleParticleState,
    SpectralData,
    StateKind,
    half_form_squared_norm,
    half_form_weight,
    iqhe_evolved_flat,
    iqhe_evolved_nonflat,
    iqhe_state,
    laughlin_evolved_flat,
    laughlin_evolved_nonflat,
    laughlin_state,
    lll_evolved_flat,
    lll_evolved_nonflat,
    lll_squared_norm,
    lll_state,
    spectral_data,
)
from .density import (
    DensityGrid,
    Method,
    PeakReport,
    curvature_density_correlation,
    density_grid,
    integrated_density_y,
    iqhe_density_fast,
    normalize,
    peak_report,
)
from .plane import (
    heat_evolve,
    heat_semigroup_check,
    hermite_fn,
    monomial_image,
    oscillator_cst_image,
    oscillator_fn,
    plane_cst_image,
    plane_cst_image_closed_form,
    plane_laughlin,
)

__version__ = "0.1.0"
