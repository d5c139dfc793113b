"""gegenforge: Gegenbauer-expansion series identities with a quadrature oracle.

The package evaluates weighted-Chebyshev targets expanded in Gegenbauer
polynomials, sums the closed-form identity catalog they generate (the
tan(pi z)/pi, 1/pi and 1/pi^2 families), and certifies every closed form
against an independent tanh-sinh integration oracle.
"""

from .context import (
    Accelerator,
    DomainError,
    PoleError,
    PrecisionContext,
    QuadratureError,
    SeriesResult,
)
from .expansion import (
    ExpansionKind,
    ExpansionParams,
    coeff_t_kind,
    coeff_u_kind,
    partial_sum,
    target_t_kind,
    target_u_kind,
)
from .gammafn import (
    bbinom,
    binomial_general,
    gamma_ratio,
    gamma_sign,
    harmonic,
    log_gamma,
    pochhammer,
)
from .identities import (
    IdentityCase,
    IdentityId,
    VerificationReport,
    default_accelerator,
    hyp_pfq_partial,
    identity_closed_form,
    identity_start,
    identity_term,
    verify_identity,
)
from .oracle import (
    TrigMomentKind,
    coeff_by_quadrature,
    mixed_inner_product,
    mixed_inner_product_closed,
    norm_by_quadrature,
    norm_closed,
    trig_moment_closed,
    trig_moment_quadrature,
)
from .orthopoly import (
    LambdaDomain,
    LambdaParam,
    PolyPoint,
    chebyshev_T,
    chebyshev_U,
    gegenbauer_at_zero,
    gegenbauer_eval,
    gegenbauer_fourier_coeffs,
    gegenbauer_norm_sq,
    legendre_eval,
)
from .quadrature import QuadratureResult, SingularIntegrand, integrate_singular
from .summation import cesaro_tail_mean, sum_series, tail_exponent_estimate

__version__ = "0.1.0"

__all__ = [
    "Accelerator",
    "DomainError",
    "ExpansionKind",
    "ExpansionParams",
    "IdentityCase",
    "IdentityId",
    "LambdaDomain",
    "LambdaParam",
    "PoleError",
    "PolyPoint",
    "PrecisionContext",
    "QuadratureError",
    "QuadratureResult",
    "SeriesResult",
    "SingularIntegrand",
    "TrigMomentKind",
    "VerificationReport",
    "bbinom",
    "binomial_general",
    "cesaro_tail_mean",
    "chebyshev_T",
    "chebyshev_U",
    "coeff_by_quadrature",
    "coeff_t_kind",
    "coeff_u_kind",
    "default_accelerator",
    "gamma_ratio",
    "gamma_sign",
    "gegenbauer_at_zero",
    "gegenbauer_eval",
    "gegenbauer_fourier_coeffs",
    "gegenbauer_norm_sq",
    "harmonic",
    "hyp_pfq_partial",
    "identity_closed_form",
    "identity_start",
    "identity_term",
    "integrate_singular",
    "legendre_eval",
    "log_gamma",
    "mixed_inner_product",
    "mixed_inner_product_closed",
    "norm_by_quadrature",
    "norm_closed",
    "partial_sum",
    "pochhammer",
    "sum_series",
    "tail_exponent_estimate",
    "target_t_kind",
    "target_u_kind",
    "trig_moment_closed",
    "trig_moment_quadrature",
    "verify_identity",
]
