"""A reflective pseudogamma function: a factorial interpolant with f(x)f(-x)=1.

The function is an infinite product over prime-free bases k with exponents
built from an odd polynomial ratio of gamma values; its logarithm is the
series actually summed here:

    ln f(x) = sum_{n>=1} r_n(x) * (-1)^n / (2n-1) * w_n
    r_n(x)  = x * prod_{k=1..n-1} (x^2 - k^2)        (odd in x)
    w_n     = sum_{k=1..n} (-1)^k (2k-1) ln k / ((n-k)! (k+n-1)!)

Because r_n is odd and w_n is x-independent, ln f(-x) = -ln f(x) holds
bitwise at any truncation level, which gives the reflection identity
exactly.  At integer |x| = m the factor x^2 - m^2 kills every term past
n = m, so f(m) = m! and f(-m) = 1/m! up to float rounding only.

For non-integer x the terms decay only like ~1/n^2 (the factorial decay of
the weights fights the (n-1)!^2 growth of r_n almost exactly), so default
evaluations are capped at 120 terms and carry an honest error estimate.
r_n overflows float well before that cap and w_n underflows, so terms are
assembled from tracked signs and log magnitudes once direct arithmetic
leaves the normal float range.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterator

from mpmath import mp

from .newton import EvalReport, StopReason, TruncationPolicy, sum_series

__all__ = [
    "DEFAULT_PSEUDOGAMMA_POLICY",
    "PseudoGammaTerm",
    "rising_ratio",
    "inner_log_sum",
    "log_pseudogamma",
    "pseudogamma",
    "term_bound",
    "series_terms",
]

DEFAULT_PSEUDOGAMMA_POLICY = TruncationPolicy(max_terms=120, abs_tol=1e-12)

_LOG_FLOAT_MAX = math.log(1.7976931348623157e308)

# math.comb values convert to float safely only below ~1e308; beyond that
# the scaled inner sum switches to mpmath with cancellation-aware digits.
_INNER_FLOAT_MAX_N = 480


def rising_ratio(x: float, n: int) -> float:
    """x * prod_{k=1..n-1}(x^2 - k^2): ratio of gammas at x+n and x+1-n.

    Computed from the polynomial form, which is exact at the points where
    the denominator gamma has poles (the ratio is legitimately 0 there).
    Odd in x.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = float(x)
    for k in range(1, n):
        out *= x * x - k * k
    return out


# (value, sign, log_abs) of the inner weight sum, per n; x-independent.
_inner_cache: dict[int, tuple[float, int, float]] = {}
_inner_lock = threading.Lock()


def _inner_scaled(n: int) -> tuple[float, int, float]:
    got = _inner_cache.get(n)
    if got is None:
        with _inner_lock:
            got = _inner_cache.get(n)
            if got is None:
                got = _compute_inner(n)
                _inner_cache[n] = got
    return got


def _compute_inner(n: int) -> tuple[float, int, float]:
    if n == 1:
        return 0.0, 0, -math.inf
    lg = math.lgamma(2 * n)  # ln((2n-1)!)
    if n <= _INNER_FLOAT_MAX_N:
        # scaled by (2n-1)!: sum of (-1)^k (2k-1) C(2n-1, n-k) ln k
        s = math.fsum(
            (-1) ** k * (2 * k - 1) * math.comb(2 * n - 1, n - k) * math.log(k)
            for k in range(2, n + 1)
        )
        if s == 0.0:
            return 0.0, 0, -math.inf
        sign = 1 if s > 0 else -1
        log_abs = math.log(abs(s)) - lg
    else:
        with mp.workdps(int(0.61 * n) + 25):
            sm = mp.mpf(0)
            for k in range(2, n + 1):
                sm += (-1) ** k * (2 * k - 1) * math.comb(2 * n - 1, n - k) * mp.log(k)
            if sm == 0:
                return 0.0, 0, -math.inf
            sign = 1 if sm > 0 else -1
            log_abs = float(mp.log(abs(sm))) - lg
    value = sign * math.exp(log_abs) if log_abs > -745.0 else 0.0
    return value, sign, log_abs


def inner_log_sum(n: int) -> float:
    """The x-independent inner weight sum_{k=1..n} (-1)^k (2k-1) ln k / ((n-k)!(k+n-1)!)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _inner_scaled(n)[0]


def _term_stream(x: float) -> Iterator[float]:
    sign_ratio = 1 if x > 0 else -1
    log_ratio = math.log(abs(x)) if x != 0.0 else -math.inf
    ratio = float(x)
    n = 0
    while True:
        n += 1
        if n > 1:
            f = x * x - (n - 1) * (n - 1)
            if f == 0.0:
                return
            ratio *= f  # may overflow to inf; the log form below stays valid
            if f < 0.0:
                sign_ratio = -sign_ratio
            log_ratio += math.log(abs(f))
        if ratio == 0.0:
            return
        val, sign_w, log_w = _inner_scaled(n)
        if sign_w == 0:
            yield 0.0
            continue
        parity = 1 if n % 2 == 0 else -1
        sign = parity * sign_ratio * sign_w
        if math.isfinite(ratio) and val != 0.0 and abs(log_ratio + log_w) < _LOG_FLOAT_MAX:
            yield ratio * val * parity / (2 * n - 1)
        else:
            mag = log_ratio + log_w - math.log(2 * n - 1)
            yield sign * math.exp(mag) if mag > -745.0 else 0.0


def log_pseudogamma(
    x: float, policy: TruncationPolicy = DEFAULT_PSEUDOGAMMA_POLICY
) -> EvalReport:
    """Truncated ln f(x); terminates exactly at integer x (and at 0)."""
    xf = float(x)
    if not math.isfinite(xf):
        raise ValueError(f"log_pseudogamma needs a finite argument, got {x}")
    report = sum_series(_term_stream(xf), policy)
    report.exact_value = None
    return report


def pseudogamma(x: float, policy: TruncationPolicy = DEFAULT_PSEUDOGAMMA_POLICY) -> EvalReport:
    """exp of log_pseudogamma; report metadata (log-scale terms) passed through."""
    report = log_pseudogamma(x, policy)
    report.value = math.exp(report.value)
    if report.partial_sums is not None:
        report.partial_sums = [math.exp(s) for s in report.partial_sums]
    return report


def term_bound(x: float, n: int) -> float:
    """Large-x shape of the term magnitude: |x|^(2n-1)/(2n-1) * 2^(n-2) n (n+3)/(n-1)!.

    This is the ratio-test envelope for the series; it is asymptotic in x,
    not a per-term bound at fixed x, and is exposed for diagnostics only.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if x == 0.0:
        return 0.0
    lg = (
        (2 * n - 1) * math.log(abs(x))
        - math.log(2 * n - 1)
        + (n - 2) * math.log(2.0)
        + math.log(n)
        + math.log(n + 3)
        - math.lgamma(n)
    )
    return math.exp(lg)


@dataclass
class PseudoGammaTerm:
    n: int
    gamma_ratio: float
    inner_sum: float
    term: float


def series_terms(x: float, count: int) -> list[PseudoGammaTerm]:
    """First ``count`` terms with their factors, for diagnostics and tests.

    gamma_ratio/inner_sum are best-effort floats (they can overflow or
    underflow individually for large n); term is always assembled safely.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    stream = _term_stream(float(x))
    for n in range(1, count + 1):
        try:
            term = next(stream)
        except StopIteration:
            break
        out.append(
            PseudoGammaTerm(
                n=n,
                gamma_ratio=rising_ratio(float(x), n),
                inner_sum=inner_log_sum(n),
                term=term,
            )
        )
    return out
