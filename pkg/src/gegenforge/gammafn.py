"""Gamma-family arithmetic: log-gamma, rising factorials, generalized binomials.

Real arguments stay on `math.lgamma` with the sign of the Gamma ratio tracked
separately (never through complex logs); complex arguments use the principal
branch of `scipy.special.loggamma`.  Rising factorials switch from the exact
direct product to log-Gamma differences at n = 64.
"""

import math

from scipy.special import loggamma as _complex_loggamma

from .context import PoleError

_DIRECT_LIMIT = 64
_POLE_TOL = 1e-12


def _exp_or_inf(logmag: float) -> float:
    # values past the double range degrade to a signed infinity, never raise
    try:
        return math.exp(logmag)
    except OverflowError:
        return math.inf


def _near_nonpositive_integer(x: float) -> bool:
    r = round(x)
    return r <= 0 and abs(x - r) < _POLE_TOL


def _cexp(w) -> complex:
    w = complex(w)
    m = math.exp(w.real)
    return complex(m * math.cos(w.imag), m * math.sin(w.imag))


def gamma_sign(x: float) -> float:
    """Sign of Gamma(x) for real non-pole x: (-1)**ceil(-x) on the negative axis."""
    if x > 0:
        return 1.0
    return -1.0 if math.ceil(-x) % 2 else 1.0


def log_gamma(x: float | complex) -> float | complex:
    """log Gamma(x): real for real x > 0, principal complex branch otherwise.

    Raises PoleError when x is within machine tolerance of 0, -1, -2, ...
    """
    if isinstance(x, complex):
        if abs(x.imag) < _POLE_TOL and _near_nonpositive_integer(x.real):
            raise PoleError(f"log_gamma pole at {x}")
        return complex(_complex_loggamma(x))
    if _near_nonpositive_integer(x):
        raise PoleError(f"log_gamma pole at {x}")
    if x > 0:
        return math.lgamma(x)
    return complex(_complex_loggamma(complex(x, 0.0)))


def pochhammer(a: float | complex, n: int) -> float | complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    if n == 0:
        return 1.0
    if isinstance(a, complex):
        if n < _DIRECT_LIMIT:
            out = complex(1.0)
            for j in range(n):
                out *= a + j
            return out
        return _cexp(_complex_loggamma(a + n) - _complex_loggamma(a))
    if a <= 0 and a == int(a):
        if a + n - 1 >= 0:  # zero factor inside the product range
            return 0.0
        # all factors negative: (a)_n = (-1)^n (-a)(-a-1)...(-a-n+1)
        sign = -1.0 if n % 2 else 1.0
        return sign * pochhammer(-a - n + 1.0, n)
    if n < _DIRECT_LIMIT:
        out = 1.0
        for j in range(n):
            out *= a + j
        return out
    # math.lgamma(x) is log|Gamma(x)| for negative non-integer x, so the
    # magnitude comes out directly; count the negative factors for the sign.
    negatives = 0 if a > 0 else min(n, math.ceil(-a))
    sign = -1.0 if negatives % 2 else 1.0
    return sign * _exp_or_inf(math.lgamma(a + n) - math.lgamma(a))


def bbinom(a: float | complex, n: int) -> float | complex:
    """(a)_n / n!, the rising-factorial binomial; equals binom(a+n-1, n)."""
    if n < 0:
        raise ValueError("bbinom needs n >= 0")
    if n < _DIRECT_LIMIT:
        return pochhammer(a, n) / math.factorial(n)
    if isinstance(a, complex):
        return _cexp(_complex_loggamma(a + n) - _complex_loggamma(a) - math.lgamma(n + 1))
    if a <= 0 and a == int(a):
        if a + n - 1 >= 0:
            return 0.0
        sign = -1.0 if n % 2 else 1.0
        return sign * bbinom(-a - n + 1.0, n)
    negatives = 0 if a > 0 else min(n, math.ceil(-a))
    sign = -1.0 if negatives % 2 else 1.0
    return sign * _exp_or_inf(math.lgamma(a + n) - math.lgamma(a) - math.lgamma(n + 1))


def binomial_general(a: float | complex, n: int) -> float | complex:
    """Falling binomial a(a-1)...(a-n+1)/n!, defined for any complex a."""
    if n < 0:
        raise ValueError("binomial_general needs n >= 0")
    if n < _DIRECT_LIMIT:
        if isinstance(a, complex):
            out = complex(1.0)
        else:
            out = 1.0
        for j in range(n):
            out *= a - j
        return out / math.factorial(n)
    if isinstance(a, complex):
        return _cexp(
            _complex_loggamma(a + 1) - _complex_loggamma(a - n + 1) - math.lgamma(n + 1)
        )
    if a < 0 and a == int(a):
        sign = -1.0 if n % 2 else 1.0
        return sign * bbinom(-a, n)
    base = a - n + 1  # a(a-1)...(a-n+1) is the rising factorial started here
    if base <= 0 and base == int(base) and a >= 0:
        return 0.0
    negatives = 0 if base > 0 else min(n, math.ceil(-base))
    sign = -1.0 if negatives % 2 else 1.0
    return sign * _exp_or_inf(math.lgamma(a + 1) - math.lgamma(base) - math.lgamma(n + 1))


def harmonic(k: int) -> float:
    """Harmonic number H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0."""
    if k < 0:
        raise ValueError("harmonic needs k >= 0")
    h = 0.0
    for j in range(1, k + 1):
        h += 1.0 / j
    return h


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den) for real non-pole arguments, sign tracked exactly."""
    return (
        gamma_sign(num)
        * gamma_sign(den)
        * math.exp(math.lgamma(num) - math.lgamma(den))
    )
