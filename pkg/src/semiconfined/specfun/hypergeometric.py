"""Maclaurin series of the confluent hypergeometric function 1F1."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import AccuracyError, DomainError


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-13
    max_terms: int = 10000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


def kummer_series(a, b, z, ctl: SeriesControl | None = None):
    """Sum ``1F1(a; b; z)`` and return ``(value, sum of |terms|)``.

    Arithmetic is generic: passing mpmath numbers sums at their working
    precision.  The second value bounds the cancellation in the sum.
    """
    ctl = ctl or SeriesControl()
    if b <= 0 and b == int(b):
        raise DomainError(f"1F1 undefined for non-positive integer b={b!r}")
    term = 1 + 0 * z
    total = term
    abs_total = abs(term)
    small = 0
    for k in range(ctl.max_terms):
        term = term * (a + k) / (b + k) * z / (k + 1)
        total = total + term
        abs_total = abs_total + abs(term)
        if abs(term) <= ctl.rel_tol * abs(total):
            small += 1
            if small == 3:
                return total, abs_total
        else:
            small = 0
    residual = float(abs(term) / abs(total)) if total != 0 else float("inf")
    raise AccuracyError(
        f"1F1({a}; {b}; {z}) did not converge in {ctl.max_terms} terms", residual=residual)


def kummer_1f1(a: float, b: float, z: complex, ctl: SeriesControl | None = None) -> complex:
    """``1F1(a; b; z)`` for complex ``z`` by direct series summation."""
    value, _ = kummer_series(float(a), float(b), complex(z), ctl)
    return value
