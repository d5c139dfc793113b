"""Gegenbauer expansions of weighted Chebyshev targets.

Two families are supported, indexed by the second argument q of the nonzero
coefficients (the expansion only meets degrees m + 2q):

U-kind target  U_m(x) * (1-x^2)^(1-lam),   lam in (-1/2, 3),
    coefficient  (m+1) sqrt(pi) Gamma(lam) / (2 Gamma(lam+1/2))
                 * (m+lam+2q)/(m+1+q)
                 * bbinom(lam-1, q) bbinom(lam, m+q) / bbinom(2 lam, m+2q)

T-kind target  T_m(x) * (1-x^2)^(-lam),    lam in (-1/2, 1),
    coefficient  sqrt(pi) Gamma(lam) / Gamma(lam+1/2)
                 * (lam+m+2q)
                 * bbinom(lam, q) bbinom(lam, m+q) / bbinom(2 lam, m+2q)

Partial sums stream the Gegenbauer recurrence instead of restarting it per
degree, so a 2e4-term Legendre sum costs O(N) polynomial work.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .context import DomainError, PrecisionContext, SeriesResult
from .gammafn import bbinom, gamma_ratio
from .orthopoly import LambdaDomain, LambdaParam, PolyPoint, iter_gegenbauer
from .summation import _Kahan, cesaro_tail_mean

# the expansions are proven on compacts inside (-1, 1); stay off the edge
INTERIOR_GUARD = 1e-6


class ExpansionKind(str, Enum):
    U_KIND = "u"
    T_KIND = "t"


_KIND_DOMAIN = {
    ExpansionKind.U_KIND: LambdaDomain.EXPANSION_U,
    ExpansionKind.T_KIND: LambdaDomain.EXPANSION_T,
}


@dataclass(frozen=True)
class ExpansionParams:
    """(lam, m, kind) triple with the kind's lambda interval enforced."""

    lam: float
    m: int
    kind: ExpansionKind

    def __post_init__(self) -> None:
        LambdaParam(self.lam, _KIND_DOMAIN[self.kind])  # validates
        if self.m < 0:
            raise ValueError("m must be >= 0")


def _check_lambda(lam: float, kind: ExpansionKind) -> None:
    LambdaParam(lam, _KIND_DOMAIN[kind])


def _prefactor(lam: float) -> float:
    # sqrt(pi) Gamma(lam)/Gamma(lam+1/2); negative for lam in (-1/2, 0)
    return math.sqrt(math.pi) * gamma_ratio(lam, lam + 0.5)


def coeff_u_kind(lam: float, m: int, q: int) -> float:
    """Coefficient of C_{m+2q}^(lam) in the U-kind expansion."""
    _check_lambda(lam, ExpansionKind.U_KIND)
    if m < 0 or q < 0:
        raise ValueError("m, q must be >= 0")
    return (
        0.5
        * (m + 1)
        * _prefactor(lam)
        * (m + lam + 2 * q)
        / (m + 1 + q)
        * bbinom(lam - 1.0, q)
        * bbinom(lam, m + q)
        / bbinom(2.0 * lam, m + 2 * q)
    )


def coeff_t_kind(lam: float, m: int, q: int) -> float:
    """Coefficient of C_{m+2q}^(lam) in the T-kind expansion."""
    _check_lambda(lam, ExpansionKind.T_KIND)
    if m < 0 or q < 0:
        raise ValueError("m, q must be >= 0")
    return (
        _prefactor(lam)
        * (lam + m + 2 * q)
        * bbinom(lam, q)
        * bbinom(lam, m + q)
        / bbinom(2.0 * lam, m + 2 * q)
    )


def expansion_coeff(params: ExpansionParams, q: int) -> float:
    if params.kind is ExpansionKind.U_KIND:
        return coeff_u_kind(params.lam, params.m, q)
    return coeff_t_kind(params.lam, params.m, q)


def _as_x(x) -> float:
    return x.x if isinstance(x, PolyPoint) else float(x)


def target_u_kind(lam: float, m: int, x) -> float:
    """U_m(x) * (1-x^2)^(1-lam), evaluated directly."""
    from .orthopoly import chebyshev_U

    x = _as_x(x)
    w = (1.0 - x) * (1.0 + x)
    if w == 0.0 and 1.0 - lam < 0.0:
        raise DomainError("target diverges at |x| = 1 for lam > 1")
    return chebyshev_U(m, x) * w ** (1.0 - lam)


def target_t_kind(lam: float, m: int, x) -> float:
    """T_m(x) * (1-x^2)^(-lam), evaluated directly."""
    from .orthopoly import chebyshev_T

    x = _as_x(x)
    w = (1.0 - x) * (1.0 + x)
    if w == 0.0 and lam > 0.0:
        raise DomainError("target diverges at |x| = 1 for lam > 0")
    return chebyshev_T(m, x) * w ** (-lam)


def partial_sum(
    params: ExpansionParams,
    x,
    n_terms: int,
    ctx: PrecisionContext,
    smoothed: bool = False,
) -> SeriesResult:
    """Sum of coeff(q) * C_{m+2q}^(lam)(x) for q = 0 .. n_terms.

    ``smoothed`` replaces the last partial sum by the mean of the final
    quarter of partial sums ((C,1)-style), which settles the oscillation of
    the T-kind sums without moving their limit.

    The abscissa must satisfy |x| <= 1 - 1e-6 except for the normally
    convergent Legendre U-kind case (lam = 1/2), where the endpoints are
    allowed.
    """
    x = _as_x(x)
    endpoint_ok = params.kind is ExpansionKind.U_KIND and params.lam == 0.5
    if abs(x) > 1.0 - INTERIOR_GUARD and not endpoint_ok:
        raise DomainError("partial sums are certified only for |x| <= 1 - 1e-6")
    if abs(x) > 1.0:
        raise DomainError("|x| must be <= 1")
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    if n_terms + 1 > ctx.max_terms:
        raise ValueError("n_terms exceeds ctx.max_terms")

    lam, m = params.lam, params.m
    acc = _Kahan()
    sums: list[float] = []
    gegen = iter_gegenbauer(lam, x)
    degree = -1
    term = 0.0
    for q in range(n_terms + 1):
        want = m + 2 * q
        while degree < want:
            poly = next(gegen)
            degree += 1
        term = expansion_coeff(params, q) * poly
        acc.add(term)
        sums.append(acc.value)

    value = cesaro_tail_mean(sums) if smoothed else sums[-1]
    est = abs(term)
    return SeriesResult(
        value=value,
        est_error=est,
        terms_used=n_terms + 1,
        converged=est <= ctx.tolerance(value),
        decay_exponent=None,
    )
