"""Hermite and generalized Laguerre polynomials by three-term recurrence.

Both accept scalars or numpy arrays for the argument.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError


def _as_float(x):
    arr = np.asarray(x, dtype=float)
    return arr


def _ret(val):
    return float(val) if np.ndim(val) == 0 else val


def hermite(n: int, x):
    """Physicists' Hermite polynomial ``H_n(x)``."""
    if n < 0:
        raise DomainError(f"hermite requires n >= 0, got {n!r}")
    x = _as_float(x)
    h_prev = np.ones_like(x)
    if n == 0:
        return _ret(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return _ret(h)


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial ``L_n^{(alpha)}(x)``, ``alpha > -1``."""
    if n < 0:
        raise DomainError(f"laguerre requires n >= 0, got {n!r}")
    if not alpha > -1:
        raise DomainError(f"laguerre requires alpha > -1, got {alpha!r}")
    x = _as_float(x)
    l_prev = np.ones_like(x)
    if n == 0:
        return _ret(l_prev)
    l_cur = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return _ret(l_cur)
