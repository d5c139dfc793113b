"""Independent integration oracle for coefficients, norms and inner products.

Every closed form in the package can be re-derived here by tanh-sinh
quadrature of its defining weighted integral; the two routes share no code
beyond polynomial evaluation, so agreement certifies both.

The building blocks are the sine-power trig moments on (0, pi),

    cosine kind:  integral of cos(2 m theta) / sin(theta)^(2 mu)
    sine kind:    integral of sin((2m+1) theta) / sin(theta)^(2 mu + 1)

finite for mu < 1/2, with closed forms
sqrt(pi) Gamma(1/2-mu)/Gamma(1-mu) times (mu)_m/(1-mu)_m, respectively
(1+mu)_m/(1-mu)_m.
"""

import math
from enum import Enum

import numpy as np

from .context import DomainError, PrecisionContext
from .expansion import ExpansionKind, target_t_kind, target_u_kind
from .gammafn import gamma_ratio, pochhammer
from .orthopoly import chebyshev_T, chebyshev_U, gegenbauer_eval, gegenbauer_norm_sq
from .quadrature import QuadratureResult, SingularIntegrand, integrate_singular


class TrigMomentKind(Enum):
    COSINE = "cosine"
    SINE = "sine"


def trig_moment_closed(kind: TrigMomentKind, mu: float, m: int) -> float:
    """Closed form of the sine-power trig moment; requires mu < 1/2."""
    if mu >= 0.5:
        raise DomainError(f"trig moment diverges for mu = {mu} >= 1/2")
    if m < 0:
        raise ValueError("m must be >= 0")
    base = math.sqrt(math.pi) * gamma_ratio(0.5 - mu, 1.0 - mu)
    if kind is TrigMomentKind.COSINE:
        return base * pochhammer(mu, m) / pochhammer(1.0 - mu, m)
    return base * pochhammer(1.0 + mu, m) / pochhammer(1.0 - mu, m)


def _stable_sin(dl: np.ndarray, dr: np.ndarray) -> np.ndarray:
    # sin(theta) via whichever endpoint distance is smaller; exact near 0 and pi
    return np.where(dl <= dr, np.sin(dl), np.sin(dr))


def trig_moment_quadrature(
    kind: TrigMomentKind, mu: float, m: int, ctx: PrecisionContext
) -> QuadratureResult:
    """The defining (0, pi) integral evaluated directly by tanh-sinh."""
    if mu >= 0.5:
        raise DomainError(f"trig moment diverges for mu = {mu} >= 1/2")
    if m < 0:
        raise ValueError("m must be >= 0")
    expo = -2.0 * mu

    if kind is TrigMomentKind.COSINE:

        def core(x, dl, dr):
            s = _stable_sin(dl, dr)
            return np.cos(2.0 * m * x) * (s / (dl * dr)) ** expo

    else:
        # sin((2m+1) theta)/sin(theta) = U_{2m}(cos theta), finite at both ends

        def core(x, dl, dr):
            s = _stable_sin(dl, dr)
            return chebyshev_U(2 * m, np.cos(x)) * (s / (dl * dr)) ** expo

    f = SingularIntegrand(core, 0.0, math.pi, expo, expo)
    return integrate_singular(f, ctx)


def mixed_inner_product(lam: float, p: int, q: int, ctx: PrecisionContext) -> QuadratureResult:
    """Quadrature of the weighted U_p T_q inner product
    integral of (1-x^2)^(1/2-lam) U_p(x) T_q(x) over (-1, 1)."""
    if not -0.5 < lam < 0.5 or lam == 0.0:
        raise DomainError("mixed inner product needs lam in (-1/2, 1/2), lam != 0")
    if p < 0 or q < 0:
        raise ValueError("p, q must be >= 0")
    expo = 0.5 - lam

    def core(x, dl, dr):
        return chebyshev_U(p, x) * chebyshev_T(q, x)

    f = SingularIntegrand(core, -1.0, 1.0, expo, expo)
    return integrate_singular(f, ctx)


def mixed_inner_product_closed(lam: float, p: int, q: int) -> float:
    """Closed form of the same inner product, assembled from sine moments.

    Zero when p + q is odd; otherwise the half-sum/half-difference of sine
    moments at mu = lam - 1 according to whether p >= q.
    """
    if not -0.5 < lam < 0.5 or lam == 0.0:
        raise DomainError("mixed inner product needs lam in (-1/2, 1/2), lam != 0")
    if (p + q) % 2:
        return 0.0
    mu = lam - 1.0
    k_plus = trig_moment_closed(TrigMomentKind.SINE, mu, (p + q) // 2)
    if p >= q:
        return 0.5 * (k_plus + trig_moment_closed(TrigMomentKind.SINE, mu, (p - q) // 2))
    return 0.5 * (k_plus - trig_moment_closed(TrigMomentKind.SINE, mu, (q - p) // 2 - 1))


def coeff_by_quadrature(
    lam: float, m: int, n: int, kind: ExpansionKind, ctx: PrecisionContext
) -> QuadratureResult:
    """Expansion coefficient a_n of the weighted Chebyshev target, computed as
    integral of target * C_n^(lam) * weight / norm^2 with no reference to the
    closed coefficient formulas.

    The weight times the U-kind target collapses to U_m C_n (1-x^2)^(1/2) and
    the T-kind one to T_m C_n (1-x^2)^(-1/2), so only half-integer endpoint
    exponents remain.
    """
    if kind is ExpansionKind.U_KIND:
        if not -0.5 < lam < 3.0 or lam == 0.0:
            raise DomainError("U-kind coefficients need lam in (-1/2, 3), lam != 0")
        expo = 0.5

        def core(x, dl, dr):
            return chebyshev_U(m, x) * gegenbauer_eval(lam, n, x)

    else:
        if not -0.5 < lam < 1.0 or lam == 0.0:
            raise DomainError("T-kind coefficients need lam in (-1/2, 1), lam != 0")
        expo = -0.5

        def core(x, dl, dr):
            return chebyshev_T(m, x) * gegenbauer_eval(lam, n, x)

    f = SingularIntegrand(core, -1.0, 1.0, expo, expo)
    raw = integrate_singular(f, ctx)
    norm = gegenbauer_norm_sq(lam, n)
    return QuadratureResult(raw.value / norm, raw.est_error / abs(norm), raw.evaluations, raw.levels)


def norm_by_quadrature(
    kind: ExpansionKind, lam: float, m: int, ctx: PrecisionContext
) -> QuadratureResult:
    """Squared weighted L2 norm of the expansion target, by quadrature."""
    if kind is ExpansionKind.T_KIND:
        if not -0.5 < lam < 0.5 or lam == 0.0:
            raise DomainError("T-kind norm needs lam in (-1/2, 1/2), lam != 0")
        expo = -lam - 0.5

        def core(x, dl, dr):
            return chebyshev_T(m, x) ** 2

    else:
        if not -0.5 < lam < 2.5 or lam == 0.0:
            raise DomainError("U-kind norm needs lam in (-1/2, 5/2), lam != 0")
        expo = 1.5 - lam

        def core(x, dl, dr):
            return chebyshev_U(m, x) ** 2

    f = SingularIntegrand(core, -1.0, 1.0, expo, expo)
    return integrate_singular(f, ctx)


def norm_closed(kind: ExpansionKind, lam: float, m: int) -> float:
    """Closed squared norms from the cosine moments:

    T-kind: (J_0(lam) + J_m(lam)) / 2 for lam in (-1/2, 1/2);
    U-kind: (J_0(lam-1) - J_{m+1}(lam-1)) / 2 for lam in (-1/2, 3/2).
    """
    if kind is ExpansionKind.T_KIND:
        if not -0.5 < lam < 0.5 or lam == 0.0:
            raise DomainError("T-kind closed norm needs lam in (-1/2, 1/2), lam != 0")
        return 0.5 * (
            trig_moment_closed(TrigMomentKind.COSINE, lam, 0)
            + trig_moment_closed(TrigMomentKind.COSINE, lam, m)
        )
    if not -0.5 < lam < 1.5 or lam == 0.0:
        raise DomainError("U-kind closed norm needs lam in (-1/2, 3/2), lam != 0")
    mu = lam - 1.0
    return 0.5 * (
        trig_moment_closed(TrigMomentKind.COSINE, mu, 0)
        - trig_moment_closed(TrigMomentKind.COSINE, mu, m + 1)
    )


def target_by_series_check(kind: ExpansionKind, lam: float, m: int, x: float) -> float:
    """Direct target value used when certifying partial sums (no series)."""
    if kind is ExpansionKind.U_KIND:
        return target_u_kind(lam, m, x)
    return target_t_kind(lam, m, x)
