"""Series and product representations of the gamma-function family.

Four interchangeable representations live here, all driven by the same
truncation machinery from :mod:`gammaseries.newton`:

* reciprocal gamma as a unit-node Newton series whose coefficients are
  Laguerre values at 1 (valid for x >= 0; terminates at integers);
* its regrouped power-series form with exact rational truncated Taylor
  coefficients built from Stirling numbers;
* gamma itself as x^(x-1) times a Newton series with exact rational inner
  coefficients (valid for x >= 1);
* gamma as an infinite product of factorial-power bases, evaluated in the
  log domain (valid for x > 0);

plus the classical alternating-binomial digamma series.

Exact rational evaluation is used whenever the argument is an int/Fraction;
float paths use incrementally updated binomials and cached float coefficient
tables.  Two coefficient families are too ill-conditioned for plain float
accumulation and are produced at scaled software precision instead: the
log-domain product exponents (forward differences of ln k!, which lose about
0.30 n decimal digits to cancellation) and the inner coefficients of the
gamma Newton series beyond the exact-conversion range.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

from mpmath import mp

from .errors import DomainError
from .exact import factorial, laguerre_at_one, stirling_first
from .newton import (
    DEFAULT_POLICY,
    EvalReport,
    StopReason,
    TruncationPolicy,
    sum_series,
)
from .refgamma import EULER_GAMMA

Real = Union[int, float, Fraction]

__all__ = [
    "TaylorApprox",
    "taylor_coeffs",
    "eval_taylor",
    "recip_gamma_newton",
    "gamma_inner_coeff",
    "gamma_newton_terms",
    "gamma_newton",
    "product_base",
    "log_product_base",
    "gamma_product",
    "digamma_stern",
]


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _check_finite(x: Real, name: str) -> float:
    xf = float(x)
    if not math.isfinite(xf):
        raise ValueError(f"{name} needs a finite argument, got {xf}")
    return xf


# ---------------------------------------------------------------------------
# float Laguerre values (forward recurrence; stable in the oscillatory
# regime, checked against the exact table in the test suite)
# ---------------------------------------------------------------------------

_lag_float: list[float] = [1.0, 0.0]
_lag_float_lock = threading.Lock()


def _laguerre_float(n: int) -> float:
    if n >= len(_lag_float):
        with _lag_float_lock:
            while n >= len(_lag_float):
                m = len(_lag_float) - 1
                _lag_float.append((2 * m * _lag_float[m] - m * _lag_float[m - 1]) / (m + 1))
    return _lag_float[n]


# ---------------------------------------------------------------------------
# reciprocal gamma: 1/Gamma(x+1) = sum_n (-1)^n C(x,n) L_n(1)
# ---------------------------------------------------------------------------


def recip_gamma_newton(x: Real, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalReport:
    """Reciprocal gamma 1/Gamma(x+1) via the Laguerre-coefficient series.

    Defined for x >= 0 (convergence is only established there; negative x is
    refused).  Terminates exactly at non-negative integers.  Rational x runs
    in exact arithmetic; note the exact path materializes Laguerre values up
    to the truncation point, which is expensive past a few thousand terms.
    """
    xf = _check_finite(x, "recip_gamma_newton")
    if xf < 0:
        raise DomainError(f"recip_gamma_newton requires x >= 0, got {x}")
    exact = _is_exact(x)

    def gen() -> Iterator[Real]:
        binom: Real = Fraction(1) if exact else 1.0
        xv: Real = Fraction(x) if exact else xf
        n = 0
        while True:
            if n > 0:
                binom = binom * (xv - (n - 1)) / n
                if binom == 0:
                    return
            coeff = laguerre_at_one(n) if exact else _laguerre_float(n)
            yield (-1) ** n * binom * coeff
            n += 1

    return sum_series(gen(), policy)


# ---------------------------------------------------------------------------
# truncated Taylor coefficients of 1/Gamma(x+1)
# ---------------------------------------------------------------------------


@dataclass
class TaylorApprox:
    """Truncation-order-m rational polynomial approximant of 1/Gamma(x+1).

    coefficients[k] = sum_{n=0..order} (-1)^n s(n,k) L_n(1)/n!, exact.
    coefficients[0] is always 1; the truncated polynomial reproduces
    1/Gamma(x+1) exactly at the integer nodes 0..order.
    """

    order: int
    coefficients: list[Fraction]

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]


def taylor_coeffs(m: int, kmax: Optional[int] = None) -> TaylorApprox:
    """Exact rational Taylor coefficients a_0..a_kmax at truncation order m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if kmax is None:
        kmax = m
    if not 0 <= kmax <= m:
        raise ValueError("kmax must satisfy 0 <= kmax <= m")
    coeffs = []
    for k in range(kmax + 1):
        a = Fraction(0)
        for n in range(k, m + 1):
            a += (-1) ** n * stirling_first(n, k) * Fraction(laguerre_at_one(n), factorial(n))
        coeffs.append(a)
    return TaylorApprox(order=m, coefficients=coeffs)


def eval_taylor(approx: TaylorApprox, x: Real) -> Real:
    """Horner evaluation of the truncated polynomial; exact for exact x."""
    if _is_exact(x):
        acc: Real = Fraction(0)
        xv: Real = Fraction(x)
        coeffs: list = approx.coefficients
    else:
        acc = 0.0
        xv = float(x)
        coeffs = approx.as_floats()
    for c in reversed(coeffs):
        acc = acc * xv + c
    return acc


# ---------------------------------------------------------------------------
# gamma as x^(x-1) * sum_{n>=1} (-1)^n C(x,n) c_n,
# c_n = sum_{k=1..n} (-1)^k (k!/k^k) C(n,k)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def gamma_inner_coeff(n: int) -> Fraction:
    """Exact inner coefficient c_n of the scaled gamma Newton series."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(
        Fraction((-1) ** k * factorial(k) * math.comb(n, k), k**k) for k in range(1, n + 1)
    )


# The alternating inner sum cancels down from a peak near exp(0.31 n), so a
# plain float sum is meaningless past n ~ 60.  Below the cutoff the float
# value is the rounded exact rational; above it, mpmath with digits scaled
# to the cancellation.
_INNER_EXACT_MAX = 150


@lru_cache(maxsize=None)
def _inner_coeff_float(n: int) -> float:
    if n <= _INNER_EXACT_MAX:
        return float(gamma_inner_coeff(n))
    with mp.workdps(int(0.14 * n) + 25):
        s = mp.mpf(0)
        for k in range(1, n + 1):
            s += (-1) ** k * mp.mpf(math.comb(n, k)) * mp.factorial(k) / mp.power(k, k)
        return float(s)


def gamma_newton_terms(x: Real, count: int) -> list[Fraction]:
    """First ``count`` series terms (-1)^n C(x,n) c_n, exact (x must be exact)."""
    if not _is_exact(x):
        raise TypeError("gamma_newton_terms needs an exact (int or Fraction) x")
    if count < 1:
        raise ValueError("count must be >= 1")
    xv = Fraction(x)
    out = []
    binom = Fraction(1)
    for n in range(1, count + 1):
        binom = binom * (xv - (n - 1)) / n
        out.append((-1) ** n * binom * gamma_inner_coeff(n))
    return out


def gamma_newton(x: Real, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalReport:
    """Gamma(x) for x >= 1 via the x^(x-1)-scaled Newton series.

    Terminates exactly at integer x.  The report's last_term/error_estimate
    refer to the series before the x^(x-1) prefactor is applied; the value
    (and exact_value at integer x) include the prefactor.
    """
    xf = _check_finite(x, "gamma_newton")
    if xf < 1:
        raise DomainError(f"gamma_newton requires x >= 1, got {x}")
    exact = _is_exact(x)

    def gen() -> Iterator[Real]:
        binom: Real = Fraction(1) if exact else 1.0
        xv: Real = Fraction(x) if exact else xf
        n = 1
        while True:
            binom = binom * (xv - (n - 1)) / n
            if binom == 0:
                return
            coeff: Real = gamma_inner_coeff(n) if exact else _inner_coeff_float(n)
            yield (-1) ** n * binom * coeff
            n += 1

    report = sum_series(gen(), policy)
    if exact and Fraction(x).denominator == 1:
        pref: Real = Fraction(x) ** (int(x) - 1)
        if report.exact_value is not None:
            report.exact_value = pref * report.exact_value
    else:
        pref = math.exp((xf - 1.0) * math.log(xf))
        report.exact_value = None
    report.value = float(pref) * report.value
    if report.partial_sums is not None:
        report.partial_sums = [float(pref) * s for s in report.partial_sums]
    return report


# ---------------------------------------------------------------------------
# gamma as (1/x) * prod_n b_n^C(x,n), evaluated in the log domain
# ---------------------------------------------------------------------------


def product_base(n: int) -> Fraction:
    """Exact product base b_n = prod_{k=1..n} k!^((-1)^(k+n) C(n,k)).

    The reduced numerator/denominator sizes explode combinatorially (tens of
    thousands of digits by n ~ 20); the float evaluator never touches this.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    num = 1
    den = 1
    for k in range(1, n + 1):
        e = math.comb(n, k)
        if (k + n) % 2 == 0:
            num *= factorial(k) ** e
        else:
            den *= factorial(k) ** e
    return Fraction(num, den)


# ln b_n is the n-th forward difference of ln k!, which cancels from terms
# of size C(n, n/2) ln(n/2)! down to O(1/n): about 0.302 n decimal digits
# lost, so the working precision scales with n.
_logbase_cache: dict[int, float] = {}
_logbase_lock = threading.Lock()


def log_product_base(n: int) -> float:
    """ln b_n, computed at cancellation-aware software precision."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0.0
    got = _logbase_cache.get(n)
    if got is None:
        with _logbase_lock:
            got = _logbase_cache.get(n)
            if got is None:
                with mp.workdps(max(30, int(0.31 * n) + 25)):
                    s = mp.mpf(0)
                    for k in range(2, n + 1):
                        t = mp.log(mp.factorial(k)) * math.comb(n, k)
                        s += t if (k + n) % 2 == 0 else -t
                got = float(s)
                _logbase_cache[n] = got
    return got


def gamma_product(x: Real, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalReport:
    """Gamma(x) for x > 0 via the factorial-power product, in log domain.

    ln Gamma(x) = -ln x + sum_{n>=1} C(x,n) ln b_n is summed under the
    policy and exponentiated.  last_term/error_estimate are on the log
    scale; the truncation error of the value is roughly value * estimate.
    """
    xf = _check_finite(x, "gamma_product")
    if xf <= 0:
        raise DomainError(f"gamma_product requires x > 0, got {x}")

    def gen() -> Iterator[float]:
        binom = 1.0
        n = 1
        while True:
            binom = binom * (xf - (n - 1)) / n
            if binom == 0.0:
                return
            yield binom * log_product_base(n)
            n += 1

    report = sum_series(gen(), policy)
    report.value = math.exp(-math.log(xf) + report.value)
    report.exact_value = None
    if report.partial_sums is not None:
        report.partial_sums = [math.exp(-math.log(xf) + s) for s in report.partial_sums]
    return report


# ---------------------------------------------------------------------------
# digamma via the alternating binomial series
# ---------------------------------------------------------------------------


def digamma_stern(x: Real, policy: TruncationPolicy = DEFAULT_POLICY) -> EvalReport:
    """psi(x+1) = -euler_gamma - sum_{k>=1} ((-1)^k / k) C(x,k), for x >= 0.

    The argument is the series variable x, so the digamma value returned is
    at x+1.  Terminates exactly at non-negative integers.  The value is
    always float (it carries the euler_gamma constant), but the binomial
    series itself runs exactly for rational x.
    """
    xf = _check_finite(x, "digamma_stern")
    if xf < 0:
        raise DomainError(f"digamma_stern requires x >= 0, got {x}")
    exact = _is_exact(x)

    def gen() -> Iterator[Real]:
        binom: Real = Fraction(1) if exact else 1.0
        xv: Real = Fraction(x) if exact else xf
        k = 1
        while True:
            binom = binom * (xv - (k - 1)) / k
            if binom == 0:
                return
            if exact:
                yield Fraction((-1) ** (k + 1), k) * binom
            else:
                yield ((-1) ** (k + 1) / k) * binom
            k += 1

    report = sum_series(gen(), policy)
    report.value = -EULER_GAMMA + report.value
    report.exact_value = None
    if report.partial_sums is not None:
        report.partial_sums = [-EULER_GAMMA + s for s in report.partial_sums]
    return report
