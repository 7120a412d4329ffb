"""Newton interpolation engine and the shared truncated-summation machinery.

Two node layouts are supported:

* unit-spaced nodes 0, 1, 2, ... with forward-difference coefficients and
  binomial basis functions C(x, n);
* arbitrary distinct nodes with divided-difference coefficients and product
  basis (x - x_0)...(x - x_{n-1}).

Forward differences of exact data stay exact.  Divided differences are
computed at a configurable software precision (mpmath) because the triangle
is severely ill-conditioned for the node families this package cares about,
then rounded to float.

``sum_series`` is the one truncation loop used by every evaluator in the
package; it implements the TruncationPolicy stopping rules and fills in an
EvalReport.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from mpmath import mp

from .exact import ExactNumber

Real = Union[int, float, Fraction]

__all__ = [
    "StopReason",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "EvalReport",
    "CoeffKind",
    "CoefficientTable",
    "sum_series",
    "forward_difference_coeffs",
    "divided_difference_coeffs",
    "eval_newton_unit",
    "eval_newton_nodes",
]


class StopReason(str, Enum):
    TOLERANCE = "tolerance"
    MAX_TERMS = "max_terms"
    EXACT = "exact_termination"


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rules for an infinite series or product.

    Summation stops when ``consecutive_small`` successive term magnitudes
    fall below ``abs_tol``, or after ``max_terms`` terms, whichever happens
    first.  A series that runs out of terms on its own stops with
    ``exact_termination``.
    """

    max_terms: int = 10000
    abs_tol: float = 1e-12
    consecutive_small: int = 3
    keep_partial_sums: bool = False

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not (self.abs_tol >= 0.0):
            raise ValueError("abs_tol must be >= 0")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


@dataclass
class EvalReport:
    """Outcome of a truncated series evaluation.

    ``error_estimate`` is the magnitude of the last retained term (0.0 when
    the series terminated exactly).  For slowly convergent series it can
    badly underestimate the true truncation error; it is a diagnostic, not a
    bound.  ``exact_value`` is set when the whole evaluation ran in rational
    arithmetic.
    """

    value: float
    terms_used: int
    stop_reason: StopReason
    last_term: float
    error_estimate: float
    exact_value: Optional[Fraction] = None
    partial_sums: Optional[list[float]] = None
    warning: Optional[str] = None


class CoeffKind(str, Enum):
    FORWARD = "forward_difference"
    DIVIDED = "divided_difference"
    TAYLOR = "taylor"


@dataclass
class CoefficientTable:
    """Indexed series coefficients, exact or floating.

    ``nodes`` is required (and only meaningful) for divided-difference
    tables; nodes must be pairwise distinct and there must be one per entry.
    """

    kind: CoeffKind
    entries: list
    nodes: Optional[list[float]] = None

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("coefficient table must have at least one entry")
        if self.kind is CoeffKind.DIVIDED:
            if self.nodes is None or len(self.nodes) != len(self.entries):
                raise ValueError("divided-difference table needs one node per entry")
            if len(set(self.nodes)) != len(self.nodes):
                raise ValueError("nodes must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.entries)


def sum_series(
    terms: Iterable[Real], policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalReport:
    """Sum a term stream under a truncation policy.

    Terms that are int/Fraction are accumulated exactly for as long as every
    term seen so far was exact; the report then carries ``exact_value``.
    The stream ending on its own is reported as exact termination.
    """
    total: Real = Fraction(0)
    exact = True
    n_used = 0
    small_run = 0
    last = 0.0
    psums: Optional[list[float]] = [] if policy.keep_partial_sums else None
    it: Iterator[Real] = iter(terms)

    while n_used < policy.max_terms:
        try:
            term = next(it)
        except StopIteration:
            reason = StopReason.EXACT
            break
        if exact and isinstance(term, (int, Fraction)) and not isinstance(term, bool):
            total += term
        else:
            if exact:
                total = float(total)
                exact = False
            total += float(term)
        n_used += 1
        last = float(term)
        if psums is not None:
            psums.append(float(total))
        if abs(last) < policy.abs_tol:
            small_run += 1
            if small_run >= policy.consecutive_small:
                reason = StopReason.TOLERANCE
                break
        else:
            small_run = 0
    else:
        reason = StopReason.MAX_TERMS

    value = float(total)
    return EvalReport(
        value=value,
        terms_used=n_used,
        stop_reason=reason,
        last_term=last,
        error_estimate=0.0 if reason is StopReason.EXACT else abs(last),
        exact_value=Fraction(total) if exact else None,
        partial_sums=psums,
    )


def forward_difference_coeffs(values: Sequence[ExactNumber]) -> CoefficientTable:
    """Forward differences of f(0), f(1), ..., exact.

    entries[n] is the n-th forward difference at 0, i.e. the coefficient of
    C(x, n) in the unit-node Newton series for the sampled function.
    """
    if len(values) == 0:
        raise ValueError("need at least one sample value")
    diffs = [Fraction(v) for v in values]
    entries = [diffs[0]]
    while len(diffs) > 1:
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        entries.append(diffs[0])
    return CoefficientTable(CoeffKind.FORWARD, entries)


def divided_difference_coeffs(
    nodes: Sequence, values: Sequence, precision_digits: int = 200
) -> CoefficientTable:
    """Divided-difference coefficients f[x_0..x_n] on arbitrary nodes.

    The triangle runs at ``precision_digits`` decimal digits (mpmath) and
    the results are rounded to float at the end.  Nodes may be any real
    numeric type mpmath can convert, including mpf values prepared at high
    precision by the caller; they must be pairwise distinct but need not be
    sorted (the leading coefficients are symmetric in the (node, value)
    pairs).
    """
    if len(nodes) != len(values):
        raise ValueError("nodes and values must have the same length")
    if len(nodes) == 0:
        raise ValueError("need at least one (node, value) pair")
    if precision_digits < 1:
        raise ValueError("precision_digits must be >= 1")
    with mp.workdps(precision_digits):
        xs = [_to_mpf(x) for x in nodes]
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                if xs[i] == xs[j]:
                    raise ValueError(f"duplicate node at positions {i} and {j}")
        col = [_to_mpf(v) for v in values]
        entries = [col[0]]
        order = 0
        while len(col) > 1:
            order += 1
            col = [
                (col[i + 1] - col[i]) / (xs[i + order] - xs[i])
                for i in range(len(col) - 1)
            ]
            entries.append(col[0])
        out = [float(e) for e in entries]
        node_floats = [float(x) for x in xs]
    return CoefficientTable(CoeffKind.DIVIDED, out, node_floats)


def _to_mpf(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpf(v)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def eval_newton_unit(
    coeffs: CoefficientTable, x: Real, policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalReport:
    """Evaluate sum_n entries[n] * C(x, n) under the truncation policy.

    Runs in rational arithmetic when x and every entry are exact.  At a
    non-negative integer x the binomial factors vanish for n > x, so the
    evaluation terminates exactly there; exhausting a finite table is also
    exact termination.
    """
    if coeffs.kind is not CoeffKind.FORWARD:
        raise ValueError("eval_newton_unit needs a forward-difference table")
    exact = _is_exact(x) and all(_is_exact(e) for e in coeffs.entries)

    def gen() -> Iterator[Real]:
        if exact:
            binom: Real = Fraction(1)
            xv: Real = Fraction(x)
        else:
            binom = 1.0
            xv = float(x)
        for n, c in enumerate(coeffs.entries):
            if n > 0:
                binom = binom * (xv - (n - 1)) / n
            if binom == 0:
                return
            yield c * binom

    return sum_series(gen(), policy)


def eval_newton_nodes(
    coeffs: CoefficientTable, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> EvalReport:
    """Evaluate sum_n entries[n] * prod_{i<n}(x - nodes[i]), float arithmetic."""
    if coeffs.kind is not CoeffKind.DIVIDED:
        raise ValueError("eval_newton_nodes needs a divided-difference table")
    xf = float(x)
    nodes = coeffs.nodes
    assert nodes is not None

    def gen() -> Iterator[float]:
        prod = 1.0
        for n, c in enumerate(coeffs.entries):
            if n > 0:
                prod *= xf - nodes[n - 1]
            if prod == 0.0:
                return
            yield float(c) * prod

    return sum_series(gen(), policy)
