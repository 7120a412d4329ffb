"""Exact integer/rational building blocks shared by every series evaluator.

Rational values are plain ``fractions.Fraction`` instances: always in lowest
terms, positive denominator, zero canonicalized to 0/1.  No float arithmetic
happens in this module; converting a result to float is an explicit
``float(...)`` call at the consumer (correctly rounded by the Fraction type).

The Stirling and Laguerre tables are memoized module-level triangles guarded
by locks, so concurrent readers always observe fully built rows.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Union

Rational = Fraction
ExactNumber = Union[int, Fraction]

__all__ = [
    "Rational",
    "ExactNumber",
    "factorial",
    "binom_general",
    "pochhammer",
    "stirling_first",
    "laguerre_at_one",
    "laguerre_at_one_direct",
]


def _as_exact(x: ExactNumber, what: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"{what} must be an int or Fraction, got {type(x).__name__}")
    return Fraction(x)


def _check_index(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return n


def factorial(n: int) -> int:
    """n! as an exact integer; n must be a non-negative integer."""
    return math.factorial(_check_index(n))


def binom_general(x: ExactNumber, n: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-n+1)/n!, exact.

    ``x`` may be any exact rational; integer x >= n >= 0 reproduces the
    ordinary binomial coefficient.
    """
    _check_index(n)
    xf = _as_exact(x, "x")
    num = Fraction(1)
    for i in range(n):
        num *= xf - i
        if num == 0:
            return Fraction(0)
    return num / math.factorial(n)


def pochhammer(x: ExactNumber, n: int) -> Fraction:
    """Rising product x(x+1)...(x+n-1), exact; empty product is 1."""
    _check_index(n)
    xf = _as_exact(x, "x")
    out = Fraction(1)
    for i in range(n):
        out *= xf + i
    return out


# Triangle of signed Stirling numbers of the first kind; row n holds
# s(n, 0..n).  Grown on demand under a lock; rows are append-only so a
# reader that sees row n sees it complete.
_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k).

    s(0,0) = 1, s(n,k) = 0 for k > n, and
    s(n+1, k) = s(n, k-1) - n*s(n, k).
    """
    _check_index(n)
    _check_index(k, "k")
    if k > n:
        return 0
    if n >= len(_stirling_rows):
        with _stirling_lock:
            while n >= len(_stirling_rows):
                m = len(_stirling_rows) - 1
                row = _stirling_rows[m]
                nxt = [0] * (m + 2)
                for j in range(m + 2):
                    prev = row[j - 1] if 1 <= j <= m + 1 else 0
                    same = row[j] if j <= m else 0
                    nxt[j] = prev - m * same
                _stirling_rows.append(nxt)
    return _stirling_rows[n][k]


# Laguerre polynomial values at 1, exact: L_0(1)=1, L_1(1)=0 and
# (n+1) L_{n+1}(1) = 2n L_n(1) - n L_{n-1}(1).
_laguerre_vals: list[Fraction] = [Fraction(1), Fraction(0)]
_laguerre_lock = threading.Lock()


def laguerre_at_one(n: int) -> Fraction:
    """Exact value of the Laguerre polynomial L_n at 1."""
    _check_index(n)
    if n >= len(_laguerre_vals):
        with _laguerre_lock:
            while n >= len(_laguerre_vals):
                m = len(_laguerre_vals) - 1
                _laguerre_vals.append(
                    Fraction(2 * m * _laguerre_vals[m] - m * _laguerre_vals[m - 1], m + 1)
                )
    return _laguerre_vals[n]


def laguerre_at_one_direct(n: int) -> Fraction:
    """L_n(1) by the defining sum sum_k C(n,k)(-1)^k/k!; recurrence oracle."""
    _check_index(n)
    return sum(
        Fraction(math.comb(n, k) * (-1) ** k, math.factorial(k)) for k in range(n + 1)
    )
