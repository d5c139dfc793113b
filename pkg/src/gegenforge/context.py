"""Numeric policy types shared by every evaluation routine.

A :class:`PrecisionContext` bundles the summation, acceleration and
tolerance settings so that any computed value is reproducible from its
inputs plus one context object.  All routines in this package are pure:
identical inputs and an identical context give bitwise-identical output.
"""

from dataclasses import dataclass, replace
from enum import Enum


class DomainError(ValueError):
    """A parameter lies outside the interval an identity or formula is stated for."""


class PoleError(ValueError):
    """An argument sits on (or within guard distance of) a genuine pole."""


class QuadratureError(RuntimeError):
    """Level doubling exhausted without inter-level agreement; the integrand
    is probably misconfigured (wrong endpoint exponents, non-finite core)."""


class Accelerator(str, Enum):
    """Summation mode for :func:`gegenforge.summation.sum_series`."""

    DIRECT = "direct"
    KAHAN = "kahan"
    LEVIN_U = "levin_u"
    WYNN_EPSILON = "wynn_epsilon"


@dataclass(frozen=True)
class PrecisionContext:
    """Summation / acceleration / tolerance policy.

    Parameters
    ----------
    working_digits : int
        Decimal digits of working precision, at least 15.  Native binary
        doubles carry ~15.9 digits; asking for more switches the direct and
        compensated accumulators to a double-double software path.
    max_terms : int
        Hard cap on the number of series terms consumed.
    abs_tol, rel_tol : float
        Convergence targets; a sum is converged when its error estimate is
        at most ``max(abs_tol, rel_tol * |value|)``.
    accelerator : Accelerator
        Default summation mode for generic series.
    limit_guard : float
        Half-width of the guard band around removable singularities of the
        closed forms; inside the band the analytic limit branch is used.
    """

    working_digits: int = 15
    max_terms: int = 20_000
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    accelerator: Accelerator = Accelerator.KAHAN
    limit_guard: float = 1e-7

    def __post_init__(self) -> None:
        if self.working_digits < 15:
            raise ValueError("working_digits must be >= 15")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if not 0 < self.limit_guard < 0.125:
            raise ValueError("limit_guard must lie in (0, 1/8)")

    def tolerance(self, value: float | complex) -> float:
        """Convergence threshold for a sum whose current value is ``value``."""
        return max(self.abs_tol, self.rel_tol * abs(value))

    def with_(self, **changes) -> "PrecisionContext":
        """Copy with the given fields replaced."""
        return replace(self, **changes)


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of one series summation.

    ``converged`` is only set when ``est_error`` met the governing context's
    tolerance; the value field always carries the best available estimate,
    converged or not.  ``decay_exponent`` is the fitted p of ``|t_n| ~ C n**-p``
    when a tail fit was performed (direct and compensated modes only).
    """

    value: float | complex
    est_error: float
    terms_used: int
    converged: bool
    decay_exponent: float | None = None
