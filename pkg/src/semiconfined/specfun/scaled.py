"""Complex numbers carried as (log-modulus, phase).

Gamma-weighted products in the semiconfined model routinely exceed the
double-precision range (``(λ₀a)^{289}`` at ``a = 12``) while the physically
meaningful combinations stay moderate.  Keeping the logarithm avoids the
intermediate overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np


def wrap_phase(phase):
    """Map an angle (scalar or array) onto (-π, π]."""
    wrapped = np.remainder(np.asarray(phase, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    wrapped = np.where(wrapped == -np.pi, np.pi, wrapped)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class ScaledComplex:
    """A complex value ``exp(log_modulus) * exp(i * phase)``.

    ``log_modulus == -inf`` encodes an exact zero; its phase is then 0.
    """

    log_modulus: float
    phase: float = 0.0

    def __post_init__(self):
        lm = float(self.log_modulus)
        if math.isnan(lm):
            raise ValueError("log_modulus is NaN")
        ph = 0.0 if lm == -math.inf else wrap_phase(self.phase)
        object.__setattr__(self, "log_modulus", lm)
        object.__setattr__(self, "phase", ph)

    @classmethod
    def zero(cls) -> ScaledComplex:
        return cls(-math.inf, 0.0)

    @classmethod
    def from_complex(cls, value: complex) -> ScaledComplex:
        value = complex(value)
        if value == 0:
            return cls.zero()
        return cls(math.log(abs(value)), cmath.phase(value))

    @classmethod
    def from_log(cls, log_value: complex) -> ScaledComplex:
        """Build from a complex logarithm ``ln|v| + i arg v``."""
        log_value = complex(log_value)
        return cls(log_value.real, log_value.imag)

    @property
    def is_zero(self) -> bool:
        return self.log_modulus == -math.inf

    def log(self) -> complex:
        """Complex logarithm; ``-inf`` real part for zero."""
        return complex(self.log_modulus, self.phase)

    def to_complex(self) -> complex:
        """Materialize; overflows to ``inf`` beyond the double range."""
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_modulus), self.phase)

    __complex__ = to_complex

    def abs(self) -> float:
        return 0.0 if self.is_zero else math.exp(self.log_modulus)

    def abs2_log(self) -> float:
        """``ln |v|^2``."""
        return 2.0 * self.log_modulus

    def conjugate(self) -> ScaledComplex:
        return ScaledComplex(self.log_modulus, -self.phase)

    def __mul__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.from_complex(other)
        if self.is_zero or other.is_zero:
            return ScaledComplex.zero()
        return ScaledComplex(self.log_modulus + other.log_modulus, self.phase + other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.from_complex(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a scaled zero")
        if self.is_zero:
            return ScaledComplex.zero()
        return ScaledComplex(self.log_modulus - other.log_modulus, self.phase - other.phase)

    def __neg__(self):
        return ScaledComplex(self.log_modulus, self.phase + math.pi)

    def __add__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.from_complex(other)
        return scaled_sum([self, other])

    __radd__ = __add__

    def isclose(self, other: ScaledComplex, rel_tol: float = 1e-12) -> bool:
        """Relative closeness of the represented values."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        ratio = cmath.exp(complex(self.log_modulus - other.log_modulus, self.phase - other.phase))
        return abs(ratio - 1.0) <= rel_tol


def scaled_sum(terms: Iterable[ScaledComplex]) -> ScaledComplex:
    """Sum after rescaling every term by the largest log-modulus."""
    terms = [t for t in terms if not t.is_zero]
    if not terms:
        return ScaledComplex.zero()
    top = max(t.log_modulus for t in terms)
    acc = sum(cmath.rect(math.exp(t.log_modulus - top), t.phase) for t in terms)
    if acc == 0:
        return ScaledComplex.zero()
    return ScaledComplex(top + math.log(abs(acc)), cmath.phase(acc))


def log_sum_exp(logs: np.ndarray, axis: int = 0) -> np.ndarray:
    """Complex log of ``sum(exp(logs))`` along ``axis`` with max-rescaling.

    ``logs`` holds complex logarithms; entries with real part ``-inf`` are
    exact zeros.  An all-zero slice yields ``-inf``.
    """
    logs = np.asarray(logs, dtype=complex)
    top = np.max(logs.real, axis=axis, keepdims=True)
    safe_top = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(invalid="ignore"):
        shifted = np.where(np.isneginf(logs.real), 0.0, np.exp(logs - safe_top))
    acc = np.sum(shifted, axis=axis)
    safe_top = np.squeeze(safe_top, axis=axis)
    with np.errstate(divide="ignore"):
        out = safe_top + np.log(acc.astype(complex))
    return np.where(acc == 0, complex(-np.inf, 0.0), out)
