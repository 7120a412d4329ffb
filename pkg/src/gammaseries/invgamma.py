"""Principal inverse of the gamma function, two independent ways.

The closed-form route expands the inverse as a Newton series on the nodes
ln(k!), where its values are the integers k+1:

    inv(x) = 2 + sum_{n>=0} a_n * prod_{i=1..n} ln(x / i!)
    a_n    = sum_{k=0..n} k / ( prod_{i=1..k} ln((k+1)!/i!)
                              * prod_{i=1..n-k} ln((k+1)!/(k+1+i)!) )

The coefficients a_n are validated against divided differences of the same
data computed at high precision, and the whole series is cross-checked with
a bracketing root search on the reference gamma.  The series is only
empirically supported on (G(alpha), infinity), where alpha ~ 1.4616 is the
positive root of digamma and G(alpha) ~ 0.8856 the gamma minimum; inputs at
or below the boundary are refused, and evaluations that hit the term cap
carry a non-convergence warning instead of failing.  Convergence measured at
interior points is slow (error ~ N^-0.35 at x=3); the region scan exposed by
the CLI exists to map exactly that.

The coefficients mix log-products spanning thousands of orders of
magnitude, so each a_n is computed with mpmath and cached as a (float,
sign, log-magnitude) triple; series terms are then assembled from logs,
which keeps the evaluation finite long after the float value of a_n has
underflowed.

divergence_demo documents the textbook failure of putting the nodes at k!
directly: the exact coefficients start 2, 1, -3/20, 559/91080, and at the
sampled points the series settles on a value visibly different from the true
inverse (the gap, not term blow-up, is how the failure manifests here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from mpmath import mp

from .errors import DomainError
from .exact import factorial
from .newton import (
    EvalReport,
    StopReason,
    TruncationPolicy,
    divided_difference_coeffs,
    sum_series,
)
from .refgamma import digamma_ref, gamma_ref

__all__ = [
    "DEFAULT_INV_POLICY",
    "DEFAULT_PRECISION_DIGITS",
    "InvGammaCoeff",
    "inv_coeff",
    "inv_coeff_oracle",
    "inv_gamma_series",
    "inv_gamma_oracle",
    "alpha",
    "DivergenceDemo",
    "divergence_demo",
]

DEFAULT_PRECISION_DIGITS = 200
DEFAULT_INV_POLICY = TruncationPolicy(max_terms=60, abs_tol=1e-12)


@dataclass
class InvGammaCoeff:
    """Series coefficient a_n with its per-k contributions.

    ``value`` is the rounded float (0.0 once the magnitude underflows);
    ``sign``/``log_abs`` always carry the true signed magnitude.
    """

    n: int
    value: float
    sign: int
    log_abs: float
    closed_form_terms: list[tuple[int, float]]


@lru_cache(maxsize=None)
def inv_coeff(n: int, precision_digits: int = DEFAULT_PRECISION_DIGITS) -> InvGammaCoeff:
    """Closed-form coefficient a_n at the requested working precision."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if precision_digits < 1:
        raise ValueError("precision_digits must be >= 1")
    with mp.workdps(precision_digits):
        lnf = [mp.log(mp.factorial(i)) for i in range(n + 2)]
        total = mp.mpf(0)
        contribs: list[tuple[int, float]] = [(0, 0.0)]
        for k in range(1, n + 1):
            term = mp.mpf(k)
            for i in range(1, k + 1):
                term /= lnf[k + 1] - lnf[i]
            for i in range(1, n - k + 1):
                term /= lnf[k + 1] - lnf[k + 1 + i]
            contribs.append((k, float(term)))
            total += term
        if total == 0:
            return InvGammaCoeff(n, 0.0, 0, -math.inf, contribs)
        sign = 1 if total > 0 else -1
        log_abs = float(mp.log(abs(total)))
    return InvGammaCoeff(n, float(total), sign, log_abs, contribs)


def inv_coeff_oracle(n: int, precision_digits: int = DEFAULT_PRECISION_DIGITS) -> float:
    """Divided difference f[ln 1!, ..., ln (n+1)!] of the data f(ln k!) = k+1.

    Independent check of inv_coeff: equal for n >= 1; at n = 0 it returns
    the full constant 2 that the closed form carries separately.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    with mp.workdps(precision_digits):
        nodes = [mp.log(mp.factorial(k)) for k in range(1, n + 2)]
        values = list(range(2, n + 3))
        table = divided_difference_coeffs(nodes, values, precision_digits)
    return table.entries[-1]


# gamma minimum location/value, resolved lazily from the reference oracle
_alpha_cache: Optional[tuple[float, float]] = None


def alpha(lo: float = 1.0, hi: float = 2.0) -> tuple[float, float]:
    """Positive root of digamma (bisection to ~1e-14) and gamma there."""
    flo = digamma_ref(lo)
    fhi = digamma_ref(hi)
    if not (flo < 0.0 < fhi):
        raise ValueError(f"bracket [{lo}, {hi}] does not straddle the digamma root")
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        if digamma_ref(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return root, gamma_ref(root)


def _gamma_minimum() -> tuple[float, float]:
    global _alpha_cache
    if _alpha_cache is None:
        _alpha_cache = alpha()
    return _alpha_cache


def inv_gamma_series(
    x: float, policy: TruncationPolicy = DEFAULT_INV_POLICY,
    precision_digits: int = DEFAULT_PRECISION_DIGITS,
) -> EvalReport:
    """The Newton series for the principal inverse, truncated per policy.

    Requires x > G(alpha) (the open interval the expansion is supported on).
    Terminates exactly at x = m! where a product factor ln(x/m!) vanishes.
    A max_terms stop with the last term still above tolerance sets
    ``warning`` rather than raising: mapping the slow-convergence edge is
    part of this module's job.
    """
    xf = float(x)
    if not math.isfinite(xf):
        raise ValueError(f"inv_gamma_series needs a finite argument, got {x}")
    _, gmin = _gamma_minimum()
    if xf <= gmin:
        raise DomainError(
            f"inv_gamma_series requires x > {gmin:.10f} (gamma's minimum on the "
            f"positive axis; the series is only supported above it), got {xf}"
        )
    logx = math.log(xf)

    def gen() -> Iterator[float]:
        log_prod = 0.0
        sign_prod = 1
        n = 0
        while True:
            if n >= 1:
                if xf == float(factorial(n)):
                    return  # node: factor ln(x/n!) is exactly zero
                f = logx - math.lgamma(n + 1)
                if f == 0.0:
                    return
                log_prod += math.log(abs(f))
                if f < 0.0:
                    sign_prod = -sign_prod
            c = inv_coeff(n, precision_digits)
            if c.sign == 0:
                yield 0.0
            else:
                mag = c.log_abs + log_prod
                yield c.sign * sign_prod * math.exp(mag) if mag > -745.0 else 0.0
            n += 1

    report = sum_series(gen(), policy)
    report.value = 2.0 + report.value
    report.exact_value = None
    if report.partial_sums is not None:
        report.partial_sums = [2.0 + s for s in report.partial_sums]
    if report.stop_reason is StopReason.MAX_TERMS and report.error_estimate > policy.abs_tol:
        report.warning = (
            f"series hit max_terms={policy.max_terms} with last term "
            f"{report.last_term:.3e} above abs_tol={policy.abs_tol:.1e}; "
            "convergence near the lower boundary is slow to nonexistent"
        )
    return report


def inv_gamma_oracle(x: float, tol: float = 1e-13) -> float:
    """The unique y >= alpha with gamma_ref(y) = x, by bracketed bisection."""
    xf = float(x)
    if not math.isfinite(xf):
        raise ValueError(f"inv_gamma_oracle needs a finite argument, got {x}")
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    a, gmin = _gamma_minimum()
    if xf < gmin:
        raise DomainError(
            f"inv_gamma_oracle requires x >= {gmin:.10f} (gamma's minimum), got {xf}"
        )
    lo, hi = a, a + 1.0
    step = 1.0
    while gamma_ref(hi) < xf:
        lo = hi
        step *= 2.0
        hi += step
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gamma_ref(mid) < xf:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class DivergenceDemo:
    """Exact coefficients and behavior of the naive factorial-node series."""

    coefficients: list[Fraction]
    sample_x: float
    term_magnitudes: list[float]
    partial_sum: float
    oracle_value: float


def divergence_demo(N: int, sample_x: float = 3.5) -> DivergenceDemo:
    """Newton coefficients on nodes k! (exact rationals) plus term data at a sample x.

    Interpolation data: (k!, k+1) for k = 1..N.  Report output only; the
    interesting part is how far the truncated series lands from the true
    inverse at the sample point.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    nodes = [factorial(k) for k in range(1, N + 1)]
    col = [Fraction(k + 2) for k in range(N)]
    coeffs = [col[0]]
    order = 0
    while len(col) > 1:
        order += 1
        col = [
            Fraction(col[i + 1] - col[i], nodes[i + order] - nodes[i])
            for i in range(len(col) - 1)
        ]
        coeffs.append(col[0])
    xf = float(sample_x)
    mags = []
    total = 0.0
    log_prod = 0.0
    sign_prod = 1
    for n, a in enumerate(coeffs):
        if n > 0:
            node = nodes[n - 1]
            # log|x - node|; for nodes beyond float range, x is negligible
            if node.bit_length() < 1000:
                f = xf - float(node)
                if f == 0.0:
                    mags.extend([0.0] * (len(coeffs) - n))
                    break
                log_prod += math.log(abs(f))
                if f < 0.0:
                    sign_prod = -sign_prod
            else:
                log_prod += math.log(node)
                sign_prod = -sign_prod
        if a == 0:
            mags.append(0.0)
            continue
        # coefficients decay superfactorially and the products grow to match;
        # assemble each term from exact log magnitudes to avoid 0*inf
        log_term = math.log(abs(a.numerator)) - math.log(a.denominator) + log_prod
        mag = math.exp(log_term) if log_term < 709.0 else math.inf
        mags.append(mag)
        sign = sign_prod * (1 if a > 0 else -1)
        total += sign * (mag if mag > 0.0 else 0.0)
    return DivergenceDemo(
        coefficients=coeffs,
        sample_x=xf,
        term_magnitudes=mags,
        partial_sum=total,
        oracle_value=inv_gamma_oracle(xf) if xf >= _gamma_minimum()[1] else math.nan,
    )
