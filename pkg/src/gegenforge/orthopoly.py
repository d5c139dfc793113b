"""Gegenbauer, Chebyshev and Legendre polynomial evaluation and metadata.

Everything runs on the standard three-term recurrences, which are stable on
[-1, 1] and accept numpy arrays for the abscissa, so quadrature cores can
evaluate whole node sets at once.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .context import DomainError
from .gammafn import bbinom, gamma_ratio


class LambdaDomain(Enum):
    """Interval a weight exponent must lie in, by usage site.

    ``EXPANSION_U``: degree-weighted expansions of second-kind Chebyshev
    targets; ``EXPANSION_T``: first-kind targets; ``SQUARE_T`` and
    ``SQUARE_U``: the ranges where the respective targets are square
    integrable against the Gegenbauer weight.
    """

    EXPANSION_U = (-0.5, 3.0)
    EXPANSION_T = (-0.5, 1.0)
    SQUARE_T = (-0.5, 0.5)
    SQUARE_U = (-0.5, 2.5)


@dataclass(frozen=True)
class LambdaParam:
    """A validated weight exponent: nonzero and inside its tagged interval."""

    value: float
    domain: LambdaDomain = LambdaDomain.EXPANSION_U

    def __post_init__(self) -> None:
        lo, hi = self.domain.value
        if self.value == 0.0:
            raise DomainError("lambda = 0 is excluded")
        if not lo < self.value < hi:
            raise DomainError(
                f"lambda = {self.value} outside {self.domain.name} interval ({lo}, {hi})"
            )


@dataclass(frozen=True)
class PolyPoint:
    """Abscissa in [-1, 1], optionally paired with its angle x = cos(theta)."""

    x: float
    theta: float | None = None

    def __post_init__(self) -> None:
        if abs(self.x) > 1.0:
            raise DomainError(f"|x| = {abs(self.x)} > 1")
        if self.theta is not None and abs(self.x - math.cos(self.theta)) > 1e-14:
            raise DomainError("theta does not match x = cos(theta)")

    @classmethod
    def from_theta(cls, theta: float) -> "PolyPoint":
        return cls(math.cos(theta), theta)


def _as_lambda(lam) -> float:
    return lam.value if isinstance(lam, LambdaParam) else float(lam)


def _as_x(x):
    if isinstance(x, PolyPoint):
        return x.x
    return x


def gegenbauer_eval(lam, n: int, x):
    """C_n^(lam)(x) by the recurrence n C_n = 2(n+lam-1) x C_{n-1} - (n+2lam-2) C_{n-2}.

    ``x`` may be a scalar or ndarray; C_0 = 1, C_1 = 2 lam x.
    """
    lam = _as_lambda(lam)
    x = _as_x(x)
    if n < 0:
        raise ValueError("degree must be >= 0")
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    prev2 = one
    prev1 = 2.0 * lam * x
    for k in range(2, n + 1):
        prev2, prev1 = prev1, (2.0 * (k + lam - 1.0) * x * prev1 - (k + 2.0 * lam - 2.0) * prev2) / k
    return prev1


def iter_gegenbauer(lam, x):
    """Yield C_0(x), C_1(x), C_2(x), ... without restarting the recurrence."""
    lam = _as_lambda(lam)
    x = _as_x(x)
    prev2 = 1.0
    yield prev2
    prev1 = 2.0 * lam * x
    yield prev1
    k = 2
    while True:
        prev2, prev1 = prev1, (2.0 * (k + lam - 1.0) * x * prev1 - (k + 2.0 * lam - 2.0) * prev2) / k
        yield prev1
        k += 1


def chebyshev_T(n: int, x):
    """First-kind Chebyshev polynomial, T_n(cos theta) = cos(n theta)."""
    x = _as_x(x)
    if n < 0:
        raise ValueError("degree must be >= 0")
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    prev2 = one
    prev1 = x * one
    for _ in range(2, n + 1):
        prev2, prev1 = prev1, 2.0 * x * prev1 - prev2
    return prev1


def chebyshev_U(n: int, x):
    """Second-kind Chebyshev polynomial, U_n(cos theta) sin theta = sin((n+1) theta)."""
    x = _as_x(x)
    if n < 0:
        raise ValueError("degree must be >= 0")
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    prev2 = one
    prev1 = 2.0 * x * one
    for _ in range(2, n + 1):
        prev2, prev1 = prev1, 2.0 * x * prev1 - prev2
    return prev1


def legendre_eval(n: int, x):
    """Legendre polynomial P_n; the lam = 1/2 Gegenbauer family, same code path."""
    return gegenbauer_eval(0.5, n, x)


def gegenbauer_at_zero(lam, k: int) -> float:
    """C_k^(lam)(0): zero for odd k, (-1)^(k/2) bbinom(lam, k/2) for even k."""
    if k < 0:
        raise ValueError("degree must be >= 0")
    if k % 2:
        return 0.0
    half = k // 2
    sign = -1.0 if half % 2 else 1.0
    return sign * bbinom(_as_lambda(lam), half)


def gegenbauer_norm_sq(lam, n: int) -> float:
    """Squared weighted L2 norm of C_n^(lam):
    sqrt(pi) Gamma(lam+1/2)/Gamma(lam) * bbinom(2 lam, n) / (n + lam)."""
    lam = _as_lambda(lam)
    if lam <= -0.5 or lam == 0.0:
        raise DomainError("norm defined for lam > -1/2, lam != 0")
    if n < 0:
        raise ValueError("degree must be >= 0")
    return math.sqrt(math.pi) * gamma_ratio(lam + 0.5, lam) * bbinom(2.0 * lam, n) / (n + lam)


def gegenbauer_fourier_coeffs(lam, n: int) -> list[float]:
    """Cosine-expansion coefficients of theta -> C_n^(lam)(cos theta):
    C_n(cos theta) = sum_k c_k cos((2k - n) theta), c_k = bbinom(lam,k) bbinom(lam,n-k)."""
    lam = _as_lambda(lam)
    if n < 0:
        raise ValueError("degree must be >= 0")
    return [bbinom(lam, k) * bbinom(lam, n - k) for k in range(n + 1)]
