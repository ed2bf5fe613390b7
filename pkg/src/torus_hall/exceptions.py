"""Exception types shared across the library."""


class TorusHallError(Exception):
    """Base class for all library-specific errors."""


class NonconvergentParameter(TorusHallError):
    """A series or quadrature cannot reach the requested accuracy within budget.

    Raised e.g. when a theta series would need more terms than
    ``TruncationPolicy.max_terms`` (Im tau too small for the requested
    argument), or when a heat-kernel window would have to be widened past
    the overflow threshold.
    """


class NonPeriodicHamiltonian(TorusHallError):
    """A user-supplied deformation Hamiltonian failed the period-1 check."""


class PastCriticalDeformation(TorusHallError):
    """The deformed metric is singular (or negative) at the requested point.

    The Hermitian metric h = 2*pi*N_phi / (tau_2 + (s / 2*pi*N_phi) H''(y))
    has a positive denominator only for s below the critical deformation
    time; beyond it the geometry is no longer Kähler.
    """


class BudgetExceeded(TorusHallError):
    """An integration request cannot be satisfied within its evaluation budget."""


class NoBracket(TorusHallError):
    """Root bracketing failed: the supplied interval does not change sign."""
