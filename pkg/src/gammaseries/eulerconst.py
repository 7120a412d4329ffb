"""Two all-rational series for the Euler-Mascheroni constant.

Both series come out of the gamma representations in this package:

* the Laguerre form  -gamma = sum_{n>=1} L_n(1)/n, whose partial sums equal
  (up to sign) the truncated degree-1 Taylor coefficient of 1/Gamma(x+1);
* the k^k form  gamma = -1 + sum_{n>=2} (n-2)! sum_{k=1..n} (-1)^(1+k) /
  ((n-k)! k^k), whose term numerators/denominators are OEIS A360092/A360091.

Every term and partial sum is exact rational; floats appear only in the
final estimate.  The inner k-sum of the k^k form cancels violently, which is
precisely why nothing here ever sums in float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exact import factorial, laguerre_at_one
from .refgamma import EULER_GAMMA

__all__ = [
    "GammaSeriesTerm",
    "GammaEstimate",
    "gamma_terms_laguerre",
    "gamma_terms_kk",
    "oeis_terms",
    "estimate_gamma",
    "format_bfile",
]

OEIS_NUMERATORS = "A360092"
OEIS_DENOMINATORS = "A360091"


@dataclass
class GammaSeriesTerm:
    index: int
    term: Fraction
    partial_sum: Fraction


@dataclass
class GammaEstimate:
    series: str
    terms: int
    value: float
    error: float  # signed, against the reference constant
    exact: Fraction


@lru_cache(maxsize=None)
def _kk_term(n: int) -> Fraction:
    return factorial(n - 2) * sum(
        Fraction((-1) ** (1 + k), factorial(n - k) * k**k) for k in range(1, n + 1)
    )


def gamma_terms_laguerre(N: int) -> list[GammaSeriesTerm]:
    """Terms L_n(1)/n for n=1..N; negated partial sums approximate gamma."""
    if N < 1:
        raise ValueError("N must be >= 1")
    out = []
    s = Fraction(0)
    for n in range(1, N + 1):
        t = Fraction(laguerre_at_one(n), n)
        s += t
        out.append(GammaSeriesTerm(n, t, s))
    return out


def gamma_terms_kk(N: int) -> list[GammaSeriesTerm]:
    """Terms of the k^k series for n=2..N; partial sums start at -1."""
    if N < 2:
        raise ValueError("N must be >= 2")
    out = []
    s = Fraction(-1)
    for n in range(2, N + 1):
        t = _kk_term(n)
        s += t
        out.append(GammaSeriesTerm(n, t, s))
    return out


def oeis_terms(which: str, N: int) -> list[int]:
    """First N numerators (A360092) or denominators (A360091) of the k^k terms."""
    if N < 1:
        raise ValueError("N must be >= 1")
    key = which.upper()
    if key not in (OEIS_NUMERATORS, OEIS_DENOMINATORS):
        raise ValueError(f"unknown sequence {which!r}; use {OEIS_NUMERATORS} or {OEIS_DENOMINATORS}")
    terms = gamma_terms_kk(N + 1)
    if key == OEIS_NUMERATORS:
        return [t.term.numerator for t in terms]
    return [t.term.denominator for t in terms]


def estimate_gamma(series: str, N: int) -> GammaEstimate:
    """Float rendering of the exact partial sum, with signed error vs gamma."""
    if series == "laguerre":
        exact = -gamma_terms_laguerre(N)[-1].partial_sum
    elif series == "kk":
        exact = gamma_terms_kk(N)[-1].partial_sum
    else:
        raise ValueError(f"unknown series {series!r}; use 'laguerre' or 'kk'")
    value = float(exact)
    return GammaEstimate(series=series, terms=N, value=value, error=value - EULER_GAMMA, exact=exact)


def format_bfile(values: Iterable[int], start: int = 1) -> str:
    """OEIS b-file text: one '<index> <value>' line per term, 1-based."""
    lines = [f"{i} {v}" for i, v in enumerate(values, start)]
    return "\n".join(lines) + "\n" if lines else ""
