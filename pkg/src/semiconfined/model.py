"""Physical parameters, stationary wavefunctions and energy spectra.

Two models share one parameter type: ``a = inf`` selects the Hermite
oscillator (with an optional homogeneous field ``g``), a finite ``a`` the
semiconfined oscillator whose wavefunctions vanish for ``x <= -a``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import hermite, laguerre, log_gamma


class ModelKind(enum.Enum):
    HERMITE = "hermite"
    SEMICONFINED = "semiconfined"


@dataclass(frozen=True)
class OscillatorParams:
    """Mass ``m0``, frequency ``omega``, ``hbar``, wall distance ``a`` and field ``g``."""

    m0: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    a: float = math.inf
    g: float = 0.0

    def __post_init__(self):
        for name in ("m0", "omega", "hbar"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be a positive finite number, got {value!r}")
        if not self.a > 0:
            raise DomainError(f"a must be positive (or inf), got {self.a!r}")
        if not math.isfinite(self.g):
            raise DomainError(f"g must be finite, got {self.g!r}")

    @property
    def kind(self) -> ModelKind:
        return ModelKind.HERMITE if math.isinf(self.a) else ModelKind.SEMICONFINED

    def field_ratio(self) -> float:
        """``1 + 2g/(m0 omega^2 a)``; must be positive for a finite wall."""
        if math.isinf(self.a):
            return 1.0
        return 1.0 + 2.0 * self.g / (self.m0 * self.omega ** 2 * self.a)


@dataclass(frozen=True)
class DerivedParams:
    lambda0: float
    b: float
    g0: float
    x0: float
    delta_x_sq: float

    @property
    def b2(self) -> float:
        return self.b * self.b


@dataclass(frozen=True)
class PointKinematics:
    """Dimensionless per-point quantities; array-valued when x, p are arrays."""

    xi: object
    xi0: float
    eta: object
    Delta: object
    delta: object
    b1: object
    z: object
    beta0_bar: object


def derive(params: OscillatorParams) -> DerivedParams:
    ratio = params.field_ratio()
    if not ratio > 0:
        raise DomainError(
            f"1 + 2g/(m0 omega^2 a) = {ratio!r} <= 0: g0 is not real for g={params.g}, a={params.a}")
    lambda0 = math.sqrt(params.m0 * params.omega / params.hbar)
    return DerivedParams(
        lambda0=lambda0,
        b=lambda0 * params.a,
        g0=math.sqrt(ratio),
        x0=params.g / (params.m0 * params.omega ** 2),
        delta_x_sq=params.hbar / (2.0 * params.m0 * params.omega),
    )


def kinematics(x, p, params: OscillatorParams, dp: DerivedParams | None = None) -> PointKinematics:
    dp = dp or derive(params)
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    lam = dp.lambda0
    xi = lam * x
    xi0 = lam * dp.x0
    eta = p / (params.hbar * lam)
    if math.isinf(dp.b):
        b1 = z = beta0_bar = None
    else:
        b1 = xi + dp.b
        z = (dp.b * dp.g0 - b1) + 1j * eta
        beta0_bar = -0.5 * b1 * b1 + 1j * dp.b * eta
    return PointKinematics(xi=xi, xi0=xi0, eta=eta, Delta=xi0 + xi, delta=xi0 - xi,
                           b1=b1, z=z, beta0_bar=beta0_bar)


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def psi_hermite(n: int, x, dp: DerivedParams):
    """Hermite oscillator eigenfunction, shifted to ``-x0`` by the field."""
    u = dp.lambda0 * (np.asarray(x, dtype=float) + dp.x0)
    log_c = 0.25 * math.log(dp.lambda0 ** 2 / math.pi) - 0.5 * (n * math.log(2.0) + math.lgamma(n + 1))
    return _out(np.exp(log_c - 0.5 * u * u) * hermite(n, u))


def log_norm_semiconfined(n: int, params: OscillatorParams, dp: DerivedParams) -> tuple[int, float]:
    """``(sign, ln|C_n^{gSC}|)`` of the semiconfined normalization constant."""
    b2 = dp.b2
    log_c = (b2 + 0.5) * (math.log(2.0 * b2) + math.log(dp.g0)) + 0.5 * (
        math.lgamma(n + 1) - math.log(params.a) - log_gamma(n + 2.0 * b2 + 1.0))
    return (-1) ** n, log_c


def psi_semiconfined(n: int, x, params: OscillatorParams, dp: DerivedParams | None = None):
    """Semiconfined eigenfunction; exactly zero on ``x <= -a``."""
    if math.isinf(params.a):
        raise DomainError("psi_semiconfined needs a finite wall distance a")
    dp = dp or derive(params)
    x = np.asarray(x, dtype=float)
    b2 = dp.b2
    y = 1.0 + x / params.a
    inside = y > 0
    ys = np.where(inside, y, 1.0)
    sign, log_c = log_norm_semiconfined(n, params, dp)
    with np.errstate(divide="ignore"):
        log_env = log_c + b2 * np.log(ys) - b2 * dp.g0 * ys
    poly = laguerre(n, 2.0 * b2, 2.0 * b2 * dp.g0 * ys)
    return _out(np.where(inside, sign * np.exp(log_env) * poly, 0.0))


def psi(n: int, x, params: OscillatorParams, dp: DerivedParams | None = None):
    """Eigenfunction of whichever model ``params`` selects."""
    dp = dp or derive(params)
    if params.kind is ModelKind.HERMITE:
        return psi_hermite(n, x, dp)
    return psi_semiconfined(n, x, params, dp)


def energy_hermite(n: int, params: OscillatorParams) -> float:
    return params.hbar * params.omega * (n + 0.5) - params.g ** 2 / (2.0 * params.m0 * params.omega ** 2)


def energy_semiconfined(n: int, params: OscillatorParams) -> float:
    if math.isinf(params.a):
        raise DomainError("energy_semiconfined needs a finite wall distance a")
    g0 = derive(params).g0
    m0, w, hb, a = params.m0, params.omega, params.hbar, params.a
    return hb * w * g0 * (n + 0.5 + m0 * w * a * a / hb) - m0 * w * w * a * a - a * params.g


def energy(n: int, params: OscillatorParams) -> float:
    if params.kind is ModelKind.HERMITE:
        return energy_hermite(n, params)
    return energy_semiconfined(n, params)
