"""Independent reference oracle: gamma, log-gamma, digamma, named constants.

These routines exist so every series representation in the package can be
checked against something that shares none of its machinery.  Gamma uses the
classical Lanczos approximation with a fixed published coefficient set;
digamma uses upward recurrence plus the Bernoulli asymptotic series.  The
named constants are embedded literals, not computed, because approximating
them is exactly what the rest of the package is being tested on.

Only x > 0 is supported for gamma_ref/digamma_ref.  The reciprocal-gamma
helper accepts any real argument (1/gamma is entire) by shifting with the
functional equation; it returns 0.0 at the poles of gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "RefConstants",
    "CONSTANTS",
    "EULER_GAMMA",
    "PI",
    "SQRT_PI",
    "gamma_ref",
    "lgamma_ref",
    "recip_gamma_ref",
    "digamma_ref",
]

# Published decimal expansions, rounded to nearest double.
EULER_GAMMA = 0.57721566490153286
PI = 3.14159265358979324
SQRT_PI = 1.77245385090551603


@dataclass(frozen=True)
class RefConstants:
    euler_gamma: float = EULER_GAMMA
    pi: float = PI
    sqrt_pi: float = SQRT_PI


CONSTANTS = RefConstants()

# Lanczos approximation, g = 7, 9 terms; Godfrey's widely republished
# coefficient set (theoretical relative error ~1e-15 on the half-plane).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _check_positive(x: float, name: str) -> float:
    xf = float(x)
    if math.isnan(xf):
        raise DomainError(f"{name} is undefined at nan")
    if xf <= 0.0:
        raise DomainError(f"{name} requires x > 0, got {xf}")
    return xf


def _lanczos_sum(z: float) -> float:
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (z + i)
    return acc


def gamma_ref(x: float) -> float:
    """Gamma(x) for x > 0; relative error around 1e-14 on [0.5, 50]."""
    xf = _check_positive(x, "gamma_ref")
    if xf < 0.5:
        return gamma_ref(xf + 1.0) / xf
    if xf > 140.0:
        # direct power would overflow before exp(-t) rescues it
        return math.exp(lgamma_ref(xf))
    z = xf - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * PI) * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


def lgamma_ref(x: float) -> float:
    """ln Gamma(x) for x > 0, same Lanczos coefficients in log form."""
    xf = _check_positive(x, "lgamma_ref")
    if xf < 0.5:
        return lgamma_ref(xf + 1.0) - math.log(xf)
    z = xf - 1.0
    t = z + _LANCZOS_G + 0.5
    return (z + 0.5) * math.log(t) - t + math.log(math.sqrt(2.0 * PI) * _lanczos_sum(z))


def recip_gamma_ref(z: float) -> float:
    """1/Gamma(z) for any finite real z (entire function; 0.0 at poles)."""
    zf = float(z)
    if not math.isfinite(zf):
        raise DomainError(f"recip_gamma_ref needs a finite argument, got {zf}")
    if zf >= 0.5:
        return 1.0 / gamma_ref(zf)
    # 1/Gamma(z) = z (z+1) ... (z+m-1) / Gamma(z+m) with z+m >= 0.5
    m = int(math.ceil(0.5 - zf))
    prod = 1.0
    for i in range(m):
        prod *= zf + i
    return prod / gamma_ref(zf + m)


# Asymptotic tail of psi: sum_{k>=1} B_{2k}/(2k x^{2k}); classical Bernoulli
# coefficients B_2/2, B_4/4, ... = 1/12, -1/120, 1/252, -1/240, 1/132,
# -691/32760, 1/12.
_PSI_SHIFT = 8.0


def digamma_ref(x: float) -> float:
    """psi(x) for x > 0; absolute error around 1e-14 on [0.5, 50]."""
    xf = _check_positive(x, "digamma_ref")
    acc = 0.0
    while xf < _PSI_SHIFT:
        acc -= 1.0 / xf
        xf += 1.0
    inv2 = 1.0 / (xf * xf)
    tail = inv2 * (
        1.0 / 12
        - inv2
        * (
            1.0 / 120
            - inv2
            * (
                1.0 / 252
                - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12)))
            )
        )
    )
    return acc + math.log(xf) - 0.5 / xf - tail
