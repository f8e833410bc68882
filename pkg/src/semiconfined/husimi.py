"""Closed-form Husimi distributions.

The distribution is ``λ₀/(2πħ√π) |Q|²`` where ``Q`` is the overlap of the
eigenfunction with a momentum-shifted Gaussian of width ``Δx² = ħ/(2m₀ω)``.
``Q`` is evaluated in closed form and kept as a complex logarithm, so that
the semiconfined case survives ``b² = λ₀²a² ≫ 1``.  Squaring the amplitude
is the primary route; the double sum over products of two parabolic
cylinder functions is kept for cross-checks.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import mpmath
import numpy as np

from .errors import AccuracyError, DomainError
from .grid import DistributionGrid, GridSpec, grid_metadata
from .model import ModelKind, OscillatorParams, derive, kinematics
from .specfun import (ScaledComplex, log_pochhammer, log_sum_exp, log_table_integral, pcf_d_log,
                       pochhammer_int)


class PhasePoint(NamedTuple):
    x: float
    p: float


def _check_n(n):
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return int(n)


def _scalar_log(arr) -> ScaledComplex:
    return ScaledComplex.from_log(complex(np.asarray(arr).reshape(-1)[0]))


def _prefactor(params, dp):
    return dp.lambda0 / (2.0 * math.pi * params.hbar * math.sqrt(math.pi))


# -- Hermite oscillator -----------------------------------------------------

def log_q_hermite(n, x, p, params, dp=None):
    """Complex log of the Hermite amplitude at arrays ``x, p``."""
    dp = dp or derive(params)
    kin = kinematics(x, p, params, dp)
    log_c0 = 0.25 * math.log(dp.lambda0 ** 2 / math.pi)
    base = -log_c0 - 0.5 * (n * math.log(2.0) + math.lgamma(n + 1))
    expo = -(kin.Delta ** 2 + kin.eta ** 2) / 4.0 + 0.5j * kin.delta * kin.eta
    if n == 0:
        return base + expo
    w = kin.Delta - 1j * kin.eta
    with np.errstate(divide="ignore"):
        poly = n * np.log(w.astype(complex))
    return base + expo + poly


def q_amp_hermite(n: int, pt: PhasePoint, params: OscillatorParams, dp=None) -> ScaledComplex:
    n = _check_n(n)
    return _scalar_log(log_q_hermite(n, pt[0], pt[1], params, dp))


def husimi_hermite_many(n, x, p, params: OscillatorParams):
    """Closed form ``E^n e^{-E} / (2πħ n!)`` on arrays.

    ``E = [p²/2m₀ + m₀ω²x²/2 + gx + g²/(2m₀ω²)] / ħω`` is the classical
    energy measured from the bottom of the field-shifted well.
    """
    m0, w, hb, g = params.m0, params.omega, params.hbar, params.g
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    e = (p * p / (2 * m0) + 0.5 * m0 * w * w * x * x + g * x + g * g / (2 * m0 * w * w)) / (hb * w)
    return e ** n * np.exp(-e) / (2 * math.pi * hb * math.factorial(n))


def husimi_hermite(n: int, pt: PhasePoint, params: OscillatorParams, dp=None) -> float:
    n = _check_n(n)
    return float(husimi_hermite_many(n, pt[0], pt[1], params))


# -- semiconfined oscillator -----------------------------------------------

def _k_coefficients(n, dp):
    """Complex logs of the k-sum weights, excluding ``Γ(b²+k+1) e^{z²/4} D``."""
    b2 = dp.b2
    log_2bg = math.log(2.0 * dp.b * dp.g0)
    out = []
    for k in range(n + 1):
        signed = pochhammer_int(-n, k)
        c = (math.log(abs(signed)) + (1j * math.pi if signed < 0 else 0.0)
             - log_pochhammer(2 * b2 + 1, k) - math.lgamma(k + 1)
             + k * log_2bg)
        out.append(c)
    return out


def log_q_semiconfined(n, x, p, params, dp=None):
    """Complex log of the semiconfined amplitude at arrays ``x, p``."""
    if math.isinf(params.a):
        raise DomainError("semiconfined amplitude needs a finite wall distance a")
    dp = dp or derive(params)
    kin = kinematics(x, p, params, dp)
    b2 = dp.b2
    base = ((b2 + 0.5) * math.log(2.0 * dp.b * dp.g0) - 0.5 * math.log(dp.lambda0)
            - 0.5 * math.lgamma(2 * b2 + 1)
            + 0.5 * (log_pochhammer(2 * b2 + 1, n) - math.lgamma(n + 1)) + 1j * math.pi * n)
    z = np.atleast_1d(kin.z)
    # Γ(α) e^{z²/4} D_{-α}(z) is the table integral itself
    terms = [c + log_table_integral(b2 + k + 1, z.ravel()).reshape(z.shape)
             for k, c in enumerate(_k_coefficients(n, dp))]
    total = log_sum_exp(np.stack(terms), axis=0)
    out = base + np.atleast_1d(kin.beta0_bar) + total
    return out.reshape(np.shape(kin.z))


def q_amp_semiconfined(n: int, pt: PhasePoint, params: OscillatorParams, dp=None) -> ScaledComplex:
    n = _check_n(n)
    return _scalar_log(log_q_semiconfined(n, pt[0], pt[1], params, dp))


def husimi_semiconfined_many(n, x, p, params: OscillatorParams, dp=None):
    dp = dp or derive(params)
    logq = log_q_semiconfined(n, x, p, params, dp)
    return _prefactor(params, dp) * np.exp(2.0 * logq.real)


def husimi_semiconfined(n: int, pt: PhasePoint, params: OscillatorParams, dp=None) -> float:
    n = _check_n(n)
    return float(husimi_semiconfined_many(n, pt[0], pt[1], params, dp))


def husimi_from_amplitude(q: ScaledComplex, params: OscillatorParams, dp=None) -> float:
    """``λ₀/(2πħ√π) |Q|²``."""
    dp = dp or derive(params)
    return _prefactor(params, dp) * math.exp(q.abs2_log()) if not q.is_zero else 0.0


# -- double-sum forms (cross-check evaluators) ------------------------------

def _double_sum(n, log_pref, zeta, b2, log_2g0b, log_ratio_b):
    """Sum over (k, s) of weight_k weight_s D_k(ζ) D_s(conj ζ), returned as complex."""
    weights = []
    for k in range(n + 1):
        signed = pochhammer_int(-n, k)
        weights.append(math.log(abs(signed)) + (1j * math.pi if signed < 0 else 0.0)
                       + log_ratio_b(k) + k * log_2g0b - math.lgamma(k + 1))
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    d_up = [pcf_d_log(-(b2 + k + 1), zeta) for k in range(n + 1)]
    # D(conj ζ) = conj D(ζ) for real order, so term (s, k) is the conjugate of
    # term (k, s); summing in extended precision keeps that pairing exact
    out = np.empty(zeta.shape, dtype=complex)
    with mpmath.workdps(40):
        for j in range(zeta.size):
            u = [mpmath.exp(mpmath.mpc(weights[k]) + mpmath.mpc(d_up[k][j])) for k in range(n + 1)]
            total = mpmath.fsum(uk * mpmath.conj(us) for uk in u for us in u)
            out[j] = complex(mpmath.exp(mpmath.mpc(log_pref)) * total)
    return out


def husimi_double_sum(n: int, pt: PhasePoint, params: OscillatorParams) -> complex:
    """The printed double-sum closed form, evaluated literally.

    Returns a complex number; its imaginary part is round-off only.
    """
    n = _check_n(n)
    dp = derive(params)
    m0, w, hb, a = params.m0, params.omega, params.hbar, params.a
    x, p = float(pt[0]), float(pt[1])
    lam, g0, b2 = dp.lambda0, dp.g0, dp.b2
    log_pref = (-math.log(math.pi * hb)
                - (p * p / (2 * m0) + 0.5 * m0 * w * w * (x + a * (g0 + 1)) ** 2
                   - m0 * w * w * a * a * g0 * g0) / (hb * w)
                + (2 * b2 + 1) * math.log(g0 * lam * a)
                + math.lgamma(b2 + 1) - math.lgamma(b2 + 0.5)
                + log_pochhammer(2 * b2 + 1, n) - math.lgamma(n + 1))
    zeta = -lam * complex(x + a * (1 - g0), -p / (m0 * w))
    return complex(_double_sum(
        n, log_pref, zeta, b2, math.log(2 * g0 * lam * a),
        lambda k: log_pochhammer(b2 + 1, k) - log_pochhammer(2 * b2 + 1, k))[0])


def husimi_double_sum_g0(n: int, pt: PhasePoint, params: OscillatorParams) -> float:
    """The field-free double-sum closed form (requires ``g == 0``)."""
    n = _check_n(n)
    if params.g != 0:
        raise DomainError("husimi_double_sum_g0 requires g = 0")
    m0, w, hb, a = params.m0, params.omega, params.hbar, params.a
    x, p = float(pt[0]), float(pt[1])
    lam = math.sqrt(m0 * w / hb)
    b2 = (lam * a) ** 2
    log_pref = (-math.log(math.pi * hb)
                - (p * p / (2 * m0) + 0.5 * m0 * w * w * (x * x + 4 * a * x + 2 * a * a)) / (hb * w)
                + (2 * b2 + 1) * math.log(lam * a)
                + math.lgamma(b2 + 1) - math.lgamma(b2 + 0.5)
                + log_pochhammer(2 * b2 + 1, n) - math.lgamma(n + 1))
    zeta = -lam * complex(x, -p / (m0 * w))
    value = _double_sum(
        n, log_pref, zeta, b2, math.log(2 * lam * a),
        lambda k: log_pochhammer(b2 + 1, k) - log_pochhammer(2 * b2 + 1, k))[0]
    return float(value.real)


# -- dispatch and grids -----------------------------------------------------

def husimi_many(n, x, p, params: OscillatorParams, model: ModelKind | None = None):
    """Closed-form Husimi values at arrays ``x, p`` (broadcast together)."""
    n = _check_n(n)
    model = model or params.kind
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    if model is ModelKind.HERMITE:
        return husimi_hermite_many(n, x, p, params)
    return husimi_semiconfined_many(n, x, p, params)


def husimi(n: int, pt: PhasePoint, params: OscillatorParams, model: ModelKind | None = None) -> float:
    return float(husimi_many(n, pt[0], pt[1], params, model))


def husimi_grid(model: ModelKind, n: int, grid: GridSpec, params: OscillatorParams) -> DistributionGrid:
    """Evaluate on a rectangular grid; values are row-major with x outer."""
    n = _check_n(n)
    if model is ModelKind.SEMICONFINED and math.isinf(params.a):
        raise DomainError("semiconfined grid needs a finite wall distance a")
    xs, ps = grid.axes()
    xx, pp = np.meshgrid(xs, ps, indexing="ij")
    try:
        values = husimi_many(n, xx, pp, params, model)
    except AccuracyError:
        for i, x in enumerate(xs):
            for j, p in enumerate(ps):
                try:
                    husimi_many(n, x, p, params, model)
                except AccuracyError as exc:
                    raise AccuracyError(f"cell (x[{i}]={x}, p[{j}]={p}): {exc}", exc.residual) from exc
        raise
    return DistributionGrid(spec=grid, values=np.asarray(values, dtype=float),
                            metadata=grid_metadata(model, n, params))
