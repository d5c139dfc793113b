"""Series summation: compensated accumulation and nonlinear acceleration.

Four modes are available through :func:`sum_series`:

* ``direct``       - plain running sum, tail bounded by a fitted power law,
* ``kahan``        - compensated accumulation, same tail bound,
* ``levin_u``      - Levin u-transform (remainder estimate (n+1) t_n), the
                     workhorse for alternating and slow monotone tails,
* ``wynn_epsilon`` - Wynn epsilon tableau on the partial sums, with the
                     fitted-tail bound of the raw sum as a fallback.

Terms are supplied as a callable ``terms(n)`` for n = 0, 1, 2, ...; complex
terms are supported by every mode.
"""

import math
from typing import Callable

from .context import Accelerator, PrecisionContext, SeriesResult

# consecutive exactly-zero terms taken as proof that a series terminated
_ZERO_RUN = 8

# nonlinear tables deeper than this add only rounding noise in doubles
_LEVIN_CAP = 1000
_WYNN_DEPTH = 64

_TINY = 1e-300
_HUGE = 1e300


class _Kahan:
    """Compensated running sum (works unchanged for complex values)."""

    __slots__ = ("total", "carry")

    def __init__(self, zero=0.0):
        self.total = zero
        self.carry = zero

    def add(self, x):
        y = x - self.carry
        t = self.total + y
        self.carry = (t - self.total) - y
        self.total = t

    @property
    def value(self):
        return self.total


class _DoubleDouble:
    """TwoSum-based double-double accumulator, ~32 digits of head room.

    Used when a context requests more working digits than a native double
    carries.  Terms are still evaluated in doubles; only the accumulation
    is extended.
    """

    __slots__ = ("hi", "lo")

    def __init__(self):
        self.hi = 0.0
        self.lo = 0.0

    def add(self, x):
        s = self.hi + x
        bv = s - self.hi
        err = (self.hi - (s - bv)) + (x - bv)
        lo = self.lo + err
        hi = s + lo
        self.lo = lo - (hi - s)
        self.hi = hi

    @property
    def value(self):
        return self.hi + self.lo


class _ComplexDD:
    __slots__ = ("re", "im")

    def __init__(self):
        self.re = _DoubleDouble()
        self.im = _DoubleDouble()

    def add(self, x):
        x = complex(x)
        self.re.add(x.real)
        self.im.add(x.imag)

    @property
    def value(self):
        return complex(self.re.value, self.im.value)


# ---------------------------------------------------------------------------
# double-double scalar arithmetic (Dekker/Knuth, no FMA required)
# ---------------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float):
    s = a + b
    bv = s - a
    return s, (a - (s - bv)) + (b - bv)


def _quick_two_sum(a: float, b: float):
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float):
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _dd_add(a, b):
    s, e = _two_sum(a[0], b[0])
    e += a[1] + b[1]
    return _quick_two_sum(s, e)


def _dd_sub(a, b):
    return _dd_add(a, (-b[0], -b[1]))


def _dd_mul(a, b):
    p, e = _two_prod(a[0], b[0])
    e += a[0] * b[1] + a[1] * b[0]
    return _quick_two_sum(p, e)


def _dd_div(a, b):
    q1 = a[0] / b[0]
    r = _dd_sub(a, _dd_mul((q1, 0.0), b))
    q2 = (r[0] + r[1]) / b[0]
    return _quick_two_sum(q1, q2)


class _LevinDD:
    """The Levin recursion with a double-double tableau.

    The transform's accuracy floor in native doubles is the cancellation
    inside the numerator/denominator tables (~1e-12 relative on slow
    monotone series); carrying the tables in double-double pushes the floor
    to ~1e-15 even though the terms themselves stay native.
    """

    __slots__ = ("numer", "denom", "count", "beta")

    def __init__(self, beta: float = 1.0):
        self.numer: list = []
        self.denom: list = []
        self.count = 0
        self.beta = beta

    def push(self, partial_sum, omega):
        n, b = self.count, self.beta
        term = 1.0 / (b + n)
        d = _dd_div((term, 0.0), omega if isinstance(omega, tuple) else (omega, 0.0))
        ps = partial_sum if isinstance(partial_sum, tuple) else (partial_sum, 0.0)
        self.numer.append(_dd_mul(ps, d))
        self.denom.append(d)
        if n > 0:
            ratio = (b + n - 1) * term
            for j in range(1, n + 1):
                fact = ((n - j + b) * term, 0.0)
                self.numer[n - j] = _dd_sub(self.numer[n - j + 1], _dd_mul(fact, self.numer[n - j]))
                self.denom[n - j] = _dd_sub(self.denom[n - j + 1], _dd_mul(fact, self.denom[n - j]))
                term = term * ratio
        self.count += 1
        if abs(self.denom[0][0]) < _TINY:
            return None
        q = _dd_div(self.numer[0], self.denom[0])
        return q[0] + q[1]


def _make_accumulator(ctx: PrecisionContext, complex_mode: bool):
    if ctx.working_digits > 16:
        return _ComplexDD() if complex_mode else _DoubleDouble()
    return _Kahan(complex(0.0) if complex_mode else 0.0)


class _Levin:
    """Levin sequence transformation in the recursive numerator/denominator
    form; with omega = (beta + n) t_n this is the u-variant."""

    __slots__ = ("numer", "denom", "count", "beta")

    def __init__(self, beta: float = 1.0):
        self.numer: list = []
        self.denom: list = []
        self.count = 0
        self.beta = beta

    def push(self, partial_sum, omega):
        """Feed one partial sum with its remainder estimate, return the
        current transformed limit estimate (or None while degenerate)."""
        n, b = self.count, self.beta
        term = 1.0 / (b + n)
        d = term / omega
        self.numer.append(partial_sum * d)
        self.denom.append(d)
        if n > 0:
            ratio = (b + n - 1) * term
            for j in range(1, n + 1):
                fact = (n - j + b) * term
                self.numer[n - j] = self.numer[n - j + 1] - fact * self.numer[n - j]
                self.denom[n - j] = self.denom[n - j + 1] - fact * self.denom[n - j]
                term = term * ratio
        self.count += 1
        if abs(self.denom[0]) < _TINY:
            return None
        return self.numer[0] / self.denom[0]


class _Wynn:
    """Wynn epsilon algorithm on a moving anti-diagonal, depth-capped.

    ``gap`` holds the spread between the two deepest even columns of the
    last push; when the tableau saturates at rounding level the push-to-push
    differences go to zero while the gap stays at the achievable accuracy,
    so the gap keeps the error estimate honest.
    """

    __slots__ = ("diag", "gap")

    def __init__(self):
        self.diag: list = []
        self.gap = math.inf

    def push(self, partial_sum):
        # lozenge rule on anti-diagonals: new[k] = old[k-2] + 1/(new[k-1] - old[k-1])
        old = self.diag
        depth = min(len(old) + 1, _WYNN_DEPTH + 1)
        new = [partial_sum]
        for k in range(1, depth):
            delta = new[k - 1] - old[k - 1]
            if abs(delta) < _TINY:
                inv = _HUGE
            else:
                inv = 1.0 / delta
            prev = old[k - 2] if k >= 2 else 0.0
            new.append(prev + inv)
        self.diag = new
        # even-index entries of the tableau carry the estimates
        top = len(new) - 1 if len(new) % 2 else len(new) - 2
        if top >= 2:
            self.gap = abs(new[top] - new[top - 2])
        return new[top] if top >= 0 else new[-1]


def _fit_exponent(ns, mags) -> float | None:
    """Least-squares slope p of log|t_n| vs log n; returns None if degenerate."""
    if len(ns) < 4:
        return None
    xs = [math.log(n) for n in ns]
    ys = [math.log(m) for m in mags]
    k = len(xs)
    xbar = sum(xs) / k
    ybar = sum(ys) / k
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0.0:
        return None
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    return -(sxy / sxx)


def tail_exponent_estimate(terms: Callable[[int], float], window: int, *, start: int = 10) -> float:
    """Fitted decay exponent p of |t_n| ~ C n**-p over n in [start, start+window).

    Raises ValueError when the window is too small or any sampled term is zero.
    """
    if window < 4:
        raise ValueError("window must cover at least 4 terms")
    if start < 1:
        raise ValueError("start must be >= 1")
    ns, mags = [], []
    for n in range(start, start + window):
        t = abs(terms(n))
        if t == 0.0:
            raise ValueError(f"degenerate window: |t_{n}| = 0")
        ns.append(n)
        mags.append(t)
    p = _fit_exponent(ns, mags)
    if p is None:
        raise ValueError("degenerate window: no spread in n")
    return p


def _tail_bound(n: int, mag: float, p: float | None) -> float:
    """Tail of sum |t_k|, k > n, for a fitted power law (integral estimate)."""
    if p is None or p <= 1.02:
        return math.inf
    return mag * n / (p - 1.0)


def sum_series(terms: Callable[[int], float | complex], ctx: PrecisionContext) -> SeriesResult:
    """Sum t_0 + t_1 + ... under the context's accelerator and tolerances.

    Always returns the best available estimate; ``converged`` is False when
    max_terms ran out before the error estimate met the tolerance.  A run of
    eight exactly-zero terms is treated as a terminated series.
    """
    mode = ctx.accelerator
    if mode in (Accelerator.DIRECT, Accelerator.KAHAN):
        return _sum_plain(terms, ctx, compensated=(mode is Accelerator.KAHAN))
    if mode is Accelerator.LEVIN_U:
        return _sum_levin(terms, ctx)
    return _sum_wynn(terms, ctx)


def _probe_complex(t0) -> bool:
    return isinstance(t0, complex)


def _sum_plain(terms, ctx: PrecisionContext, compensated: bool) -> SeriesResult:
    t0 = terms(0)
    complex_mode = _probe_complex(t0)
    if compensated:
        acc = _make_accumulator(ctx, complex_mode)
    else:
        acc = None
        total = complex(0.0) if complex_mode else 0.0

    hist_n: list[int] = []
    hist_mag: list[float] = []
    zero_run = 0
    last_nonzero = -1
    p_fit: float | None = None
    est = math.inf

    n = 0
    t = t0
    while True:
        if compensated:
            acc.add(t)
            value = acc.value
        else:
            total = total + t
            value = total
        mag = abs(t)
        if mag == 0.0:
            zero_run += 1
        else:
            zero_run = 0
            last_nonzero = n
            hist_n.append(n)
            hist_mag.append(mag)
            if len(hist_n) > 128:
                del hist_n[0], hist_mag[0]

        if zero_run >= _ZERO_RUN:
            return SeriesResult(value, 0.0, max(1, last_nonzero + 1), True, p_fit)

        if n >= 32 and mag > 0.0 and (n & 15) == 0:
            w = max(8, len(hist_n) // 2)
            p_fit = _fit_exponent(hist_n[-w:], hist_mag[-w:])
            est = _tail_bound(n, mag, p_fit)
            if est <= ctx.tolerance(value):
                return SeriesResult(value, est, n + 1, True, p_fit)

        n += 1
        if n >= ctx.max_terms:
            break
        t = terms(n)

    # out of terms: report the best tail estimate we have
    if last_nonzero >= 0 and hist_mag:
        w = max(8, len(hist_n) // 2)
        p_fit = _fit_exponent(hist_n[-w:], hist_mag[-w:])
        est = _tail_bound(hist_n[-1], hist_mag[-1], p_fit)
    converged = est <= ctx.tolerance(value)
    return SeriesResult(value, est, ctx.max_terms, converged, p_fit)


class _PlateauTracker:
    """Keeps the estimate at the stability plateau of a nonlinear transform.

    Sequence transformations in doubles improve up to a rounding plateau and
    then degrade; the usable answer is the estimate where successive
    differences were smallest.
    """

    __slots__ = ("last", "best", "best_delta", "delta", "stable", "worse")

    def __init__(self):
        self.last = None
        self.best = None
        self.best_delta = math.inf
        self.delta = math.inf
        self.stable = 0
        self.worse = 0

    def update(self, cand, tol: float) -> bool:
        """Feed a new transformed estimate; True means 'stop, converged'."""
        if self.last is not None:
            self.delta = abs(cand - self.last)
            if self.delta <= self.best_delta:
                self.best_delta = self.delta
                self.best = cand
                self.worse = 0
            elif self.delta > 10.0 * self.best_delta:
                self.worse += 1
            self.stable = self.stable + 1 if self.delta <= tol else 0
        self.last = cand
        return self.stable >= 2

    @property
    def degraded(self) -> bool:
        return self.worse >= 8

    def result(self, fallback, terms_used: int, ctx: PrecisionContext) -> SeriesResult:
        value = self.best if self.best is not None else fallback
        est = self.best_delta
        return SeriesResult(value, est, terms_used, est <= ctx.tolerance(value), None)


def _sum_levin(terms, ctx: PrecisionContext) -> SeriesResult:
    t0 = terms(0)
    complex_mode = _probe_complex(t0)
    extended = ctx.working_digits > 16 and not complex_mode
    if extended:
        acc = _DoubleDouble()
        lev = _LevinDD()
    else:
        acc = _Kahan(complex(0.0) if complex_mode else 0.0)
        lev = _Levin()
    track = _PlateauTracker()
    zero_run = 0
    last_nonzero = -1

    n = 0
    t = t0
    while True:
        acc.add(t)
        if abs(t) == 0.0:
            zero_run += 1
            if zero_run >= _ZERO_RUN:
                return SeriesResult(acc.value, 0.0, max(1, last_nonzero + 1), True, None)
        else:
            zero_run = 0
            last_nonzero = n
            if lev.count < _LEVIN_CAP:
                omega = (lev.beta + lev.count) * t
                state = (acc.hi, acc.lo) if extended else acc.value
                cand = lev.push(state, omega)
                if cand is not None and _finite(cand):
                    if track.update(cand, ctx.tolerance(cand)):
                        return SeriesResult(cand, track.delta, n + 1, True, None)
                if track.degraded:
                    return track.result(acc.value, n + 1, ctx)
        n += 1
        if n >= ctx.max_terms:
            break
        t = terms(n)

    return track.result(acc.value, ctx.max_terms, ctx)


def _sum_wynn(terms, ctx: PrecisionContext) -> SeriesResult:
    """Wynn mode.

    The epsilon tableau's push-to-push differences certify the limit only for
    sign-alternating (linearly convergent) sequences; on fixed-sign algebraic
    tails the deep columns saturate and mutually agree far from the true
    limit.  So: alternating stretches use the tableau plateau, fixed-sign
    stretches certify through the compensated raw sum with a fitted tail
    bound, the tableau running alongside for acceleration diagnostics.
    """
    t0 = terms(0)
    complex_mode = _probe_complex(t0)
    acc = _Kahan(complex(0.0) if complex_mode else 0.0)
    wyn = _Wynn()
    track = _PlateauTracker()
    zero_run = 0
    last_nonzero = -1
    hist_n: list[int] = []
    hist_mag: list[float] = []
    p_fit: float | None = None
    last_sign = 0
    since_flip = 0

    n = 0
    t = t0
    while True:
        acc.add(t)
        mag = abs(t)
        if mag == 0.0:
            zero_run += 1
            if zero_run >= _ZERO_RUN:
                return SeriesResult(acc.value, 0.0, max(1, last_nonzero + 1), True, None)
        else:
            zero_run = 0
            last_nonzero = n
            sgn = _term_sign(t)
            since_flip = since_flip + 1 if sgn == last_sign else 0
            last_sign = sgn
            hist_n.append(n)
            hist_mag.append(mag)
            if len(hist_n) > 128:
                del hist_n[0], hist_mag[0]
            cand = wyn.push(acc.value)
            fixed_sign = since_flip >= 16 or sgn == 0
            if not fixed_sign and _finite(cand) and abs(cand) < _HUGE:
                tol = ctx.tolerance(cand)
                if track.update(cand, tol):
                    eff = max(track.delta, wyn.gap)
                    if eff <= tol:
                        return SeriesResult(cand, eff, n + 1, True, None)
                    track.stable = 0
            # fixed-sign certification: compensated sum plus fitted tail bound
            if n >= 32 and (n & 15) == 0:
                w = max(8, len(hist_n) // 2)
                p_fit = _fit_exponent(hist_n[-w:], hist_mag[-w:])
                est = _tail_bound(n, mag, p_fit)
                if est <= ctx.tolerance(acc.value):
                    return SeriesResult(acc.value, est, n + 1, True, p_fit)
        n += 1
        if n >= ctx.max_terms:
            break
        t = terms(n)

    if since_flip >= 16:
        # fixed-sign tail: only the raw sum plus tail bound is trustworthy
        if hist_mag:
            w = max(8, len(hist_n) // 2)
            p_fit = _fit_exponent(hist_n[-w:], hist_mag[-w:])
            est = _tail_bound(hist_n[-1], hist_mag[-1], p_fit)
        else:
            est = math.inf
        return SeriesResult(
            acc.value, est, ctx.max_terms, est <= ctx.tolerance(acc.value), p_fit
        )
    return track.result(acc.value, ctx.max_terms, ctx)


def _term_sign(t) -> int:
    if isinstance(t, complex):
        key = t.real if abs(t.real) >= abs(t.imag) else t.imag
    else:
        key = t
    return 1 if key > 0 else (-1 if key < 0 else 0)


def _finite(x) -> bool:
    if isinstance(x, complex):
        return math.isfinite(x.real) and math.isfinite(x.imag)
    return math.isfinite(x)


def cesaro_tail_mean(partial_sums: list) -> float | complex:
    """(C,1)-style smoothing: mean of the last quarter of the partial sums."""
    if not partial_sums:
        raise ValueError("no partial sums to average")
    k = max(1, len(partial_sums) // 4)
    chunk = partial_sums[-k:]
    return sum(chunk) / len(chunk)
