"""Log-gamma and Pochhammer symbols."""

from __future__ import annotations

import math

from ..errors import DomainError


def log_gamma(x: float) -> float:
    """``ln Γ(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_pochhammer(a: float, k: int) -> float:
    """``ln (a)_k = ln Γ(a+k) - ln Γ(a)`` for ``a > 0``."""
    if not a > 0:
        raise DomainError(f"log_pochhammer requires a > 0, got {a!r}")
    if k < 0:
        raise DomainError(f"log_pochhammer requires k >= 0, got {k!r}")
    if k == 0:
        return 0.0
    if k <= 16:
        # short products are more accurate than a difference of two large lgammas
        return math.fsum(math.log(a + j) for j in range(k))
    return math.lgamma(a + k) - math.lgamma(a)


def pochhammer_int(m: int, k: int) -> int:
    """Exact rising factorial ``(m)_k`` for integer ``m``.

    Used for the signed factor ``(-n)_k`` whose sign must be exact.
    """
    if k < 0:
        raise DomainError(f"pochhammer_int requires k >= 0, got {k!r}")
    out = 1
    for j in range(k):
        out *= m + j
    return out


def rgamma(x: float) -> float:
    """``1/Γ(x)``, exactly zero at the poles ``x = 0, -1, -2, ...``."""
    if x <= 0 and x == int(x):
        return 0.0
    if x > 171.0:
        return 0.0 if x > 180.0 else math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)
