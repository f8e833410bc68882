"""Parabolic cylinder function D_ν(z) for real order and complex argument.

Two independent routes:

* ``"integral"`` (ν < 0): with α = -ν,
  ``Γ(α) e^{z²/4} D_{-α}(z) = ∫₀^∞ y^{α-1} e^{-y²/2 - zy} dy``.
  The integral is taken in log space after subtracting the peak of the
  integrand's modulus.  The path of integration is chosen per point to keep
  cancellation small: a ray ``arg y ∈ [0, π/4]`` from the origin, or for
  ``Re z < 0`` a segment to ``-z`` followed by a horizontal ray, along which
  the exponent is a plain Gaussian.  Points where even the best path cannot
  deliver ``CANCELLATION_LIMIT`` raise :class:`AccuracyError`.
* ``"series"`` (|ν| ≤ 30, |z| ≤ 8): the two-term 1F1 representation.  Its
  cancellation is measured and the sum is repeated at a higher working
  precision when double precision cannot deliver the result.
"""

from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np

from ..errors import AccuracyError, DomainError
from .gamma import rgamma
from .hypergeometric import SeriesControl, kummer_series
from .quadrature import integrate_batch
from .scaled import ScaledComplex

LOG_WINDOW = 46.0
INTEGRAL_REL_TOL = 1e-11
SERIES_MAX_ORDER = 30.0
SERIES_MAX_ABS_Z = 8.0
# most initial panels any single path may start with
PANEL_BUDGET = 8000
# worst relative accuracy accepted from a cancelling integral
CANCELLATION_LIMIT = 1e-8
# below this order the integrand is integrated in s = y**(1/q)
_SMOOTH_ORDER = 11.0
# candidate rays arg y ∈ [0, π/4] on the side opposite to Im z
_RAYS = 9
# the cheapest path whose peak is within this many nats of the lowest wins
_PATH_GAIN = 2.0
_BLOCK_PANELS = 20000
_EPS = np.finfo(float).eps


def _log_weight(y, c, a1, b1):
    with np.errstate(divide="ignore"):
        return c * np.log(y) - a1 * y * y - b1 * y


def _ray_peak(c, a1, b1):
    """Peak of ``c ln r - a1 r² - b1 r``; ``h = inf`` where the ray diverges."""
    a1 = np.broadcast_to(a1, np.shape(b1))
    disc = np.sqrt(b1 * b1 + 8.0 * a1 * c)
    ok = (a1 > 0) | (b1 > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(b1 >= 0, 2.0 * c / (b1 + disc), (disc - b1) / (4.0 * np.where(a1 > 0, a1, 1.0)))
        h = _log_weight(r, c, a1, b1)
    return np.where(ok, r, 1.0), np.where(ok, h, np.inf)


def _bisect(f, lo, hi, target, iters=64):
    # f increasing on [lo, hi] from below target to above target
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        up = f(mid) > target
        hi = np.where(up, mid, hi)
        lo = np.where(up, lo, mid)
    return lo, hi


def _grow(h, start, cut):
    """First ``start + 2^k`` style point past which ``h`` stays below ``cut``."""
    step = np.maximum(1.0, start)
    upper = start + step
    for _ in range(200):
        short = h(upper) > cut
        if not short.any():
            break
        step = np.where(short, 2.0 * step, step)
        upper = np.where(short, start + step, upper)
    return upper


def _panels(phase_span):
    return np.maximum(2, np.ceil(phase_span / math.pi)).astype(int)


def _integrate(integrand, lo, hi, panels, rel_tol, max_subdivisions, where):
    if panels.max() > PANEL_BUDGET:
        i = int(np.argmax(panels))
        raise AccuracyError(f"table integral at z={where[i]} needs {panels[i]} panels",
                            residual=math.inf)
    total, err, mass = integrate_batch(integrand, lo, hi, rel_tol=rel_tol,
                                       max_subdivisions=max(max_subdivisions, 2 * int(panels.max())),
                                       initial_panels=panels, with_abs=True)
    return total, err, mass


def _check_cancellation(alpha, z, total, err, mass):
    with np.errstate(divide="ignore", invalid="ignore"):
        achieved = np.maximum(err, 64 * _EPS * mass) / np.abs(total)
    bad = ~(achieved <= CANCELLATION_LIMIT)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise AccuracyError(f"table integral at alpha={alpha}, z={z[i]} lost its precision "
                            f"to cancellation (relative accuracy {achieved[i]:.3g})",
                            residual=float(achieved[i]))


def _ray_window(c, a1, b1, rstar, hstar, iters=64):
    cut = hstar - LOG_WINDOW

    def h(r):
        return _log_weight(r, c, a1, b1)

    _, hi = _bisect(lambda r: -h(r), rstar, _grow(h, rstar, cut), -cut, iters)
    lo, _ = _bisect(h, np.zeros_like(rstar), rstar, cut, iters)
    return lo, hi


def _ray_candidates(c, z):
    """Per candidate ray: angle, peak, peak log-modulus and phase span."""
    side = -np.sign(z.imag)
    out = []
    for theta in np.linspace(0.0, math.pi / 4, _RAYS):
        ph = side * theta
        u = np.exp(1j * ph)
        a1 = np.full(z.shape, 0.5 * math.cos(2.0 * theta))
        lin = z * u
        r, hr = _ray_peak(c, a1, lin.real)
        ok = np.isfinite(hr)
        # a rough window is enough to rank the candidates
        lo, hi = _ray_window(c, a1, lin.real, r, np.where(ok, hr, 0.0), iters=30)
        span = (math.sin(2.0 * theta) * hi + np.abs(lin.imag)) * (hi - lo)
        out.append((ph, r, hr, np.where(ok, span, np.inf)))
    return out


def _ray_integral(alpha, q, c, z, phi, rstar, hstar, rel_tol, max_subdivisions):
    u = np.exp(1j * phi)
    quad_coef = 0.5 * u * u  # y = r u turns y²/2 into A r²
    lin_coef = z * u
    lo, hi = _ray_window(c, quad_coef.real, lin_coef.real, rstar, hstar)
    lo_s, hi_s = (lo ** (1.0 / q), hi ** (1.0 / q)) if q > 1 else (lo, hi)
    log_q = math.log(q)
    power = q * alpha - 1.0

    def integrand(s, owner):
        aa = quad_coef[owner][:, None]
        bb = lin_coef[owner][:, None]
        with np.errstate(divide="ignore"):
            y = s ** q if q > 1 else s
            logf = log_q + power * np.log(s)
        return np.exp(logf - aa * y * y - bb * y - hstar[owner][:, None])

    phase = (2.0 * np.abs(quad_coef.imag) * hi + np.abs(lin_coef.imag)) * (hi - lo)
    total, err, mass = _integrate(integrand, lo_s, hi_s, _panels(phase), rel_tol,
                                  max_subdivisions, z)
    _check_cancellation(alpha, z, total, err, mass)
    with np.errstate(divide="ignore"):
        return 1j * alpha * phi + hstar + np.log(total)


def _saddle_peak(alpha, z, samples=129):
    """Largest log-modulus (in y) along ``0 → -z → -z + ∞``."""
    w = -z
    zz = (z * z).real
    s = np.linspace(1.0 / (samples - 1), 1.0, samples - 1)[:, None]
    t = np.linspace(0.0, 4.0 + 2.0 * math.sqrt(alpha), samples)[:, None]
    # |w| may underflow for z next to the origin; -inf samples drop out of the max
    with np.errstate(divide="ignore", invalid="ignore"):
        seg = (alpha - 1.0) * np.log(s * np.abs(w)) + zz * (s - 0.5 * s * s)
        hor = (alpha - 1.0) * np.log(np.abs(w + t)) + 0.5 * zz - 0.5 * t * t
    return np.maximum(seg.max(axis=0), hor.max(axis=0))


def _saddle_integral(alpha, q, z, rel_tol, max_subdivisions):
    """``∫`` along the segment ``0 → w = -z`` and then ``w → w + ∞``."""
    w = -z
    zsq = z * z
    log_w = np.log(w)
    log_q = math.log(q)
    power = q * alpha - 1.0

    # segment, y = w s^q: log f = α log w + log q + (qα-1) log s + z² (s^q - s^{2q}/2)
    def seg_log(s, owner):
        sq = s ** q if q > 1 else s
        with np.errstate(divide="ignore"):
            return (alpha * log_w[owner][:, None] + log_q + power * np.log(s)
                    + zsq[owner][:, None] * (sq - 0.5 * sq * sq))

    # horizontal ray, y = w + t: log f = (α-1) log(w + t) + z²/2 - t²/2
    def hor_log(t, owner):
        return (alpha - 1.0) * np.log(w[owner][:, None] + t) + 0.5 * zsq[owner][:, None] - 0.5 * t * t

    m = z.size
    idx = np.arange(m)
    s_grid = np.linspace(0.0, 1.0, 257)[1:]
    scale = np.max(seg_log(np.broadcast_to(s_grid, (m, s_grid.size)), idx).real, axis=1)
    t_grid = np.linspace(0.0, 4.0 + 2.0 * math.sqrt(alpha), 129)
    scale = np.maximum(scale, np.max(hor_log(np.broadcast_to(t_grid, (m, t_grid.size)), idx).real, axis=1))

    def hor_mod(t):
        return ((alpha - 1.0) * np.log(np.abs(w + t)) + 0.5 * zsq.real - 0.5 * t * t)

    t_hi = _grow(hor_mod, np.full(m, 1.0 + math.sqrt(alpha)), scale - LOG_WINDOW)

    seg_phase = np.abs(zsq.imag) + 2.0
    hor_phase = (alpha - 1.0) * np.abs(np.angle(w)) + 2.0
    seg, seg_err, seg_mass = _integrate(
        lambda s, o: np.exp(seg_log(s, o) - scale[o][:, None]),
        np.zeros(m), np.ones(m), _panels(seg_phase), rel_tol, max_subdivisions, z)
    hor, hor_err, hor_mass = _integrate(
        lambda t, o: np.exp(hor_log(t, o) - scale[o][:, None]),
        np.zeros(m), t_hi, _panels(hor_phase), rel_tol, max_subdivisions, z)
    total = seg + hor
    _check_cancellation(alpha, z, total, seg_err + hor_err, seg_mass + hor_mass)
    with np.errstate(divide="ignore"):
        return scale + np.log(total)


def log_table_integral(alpha: float, z, *, rel_tol: float = INTEGRAL_REL_TOL,
                       max_subdivisions: int = 2000):
    """Complex log of ``∫₀^∞ y^{α-1} exp(-y²/2 - z y) dy`` for ``α > 0``.

    Vectorized over ``z``; returns an array of complex logarithms.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise DomainError(f"table integral needs alpha > 0, got {alpha!r}")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    flat = z.ravel()

    q = math.ceil(_SMOOTH_ORDER / alpha) if alpha < _SMOOTH_ORDER else 1
    c = alpha - 1.0 / q if q > 1 else alpha - 1.0

    # candidates: the rays, then (for Re z < 0) the path through -z
    cands = _ray_candidates(c, flat)
    peaks = [cd[2] for cd in cands]
    spans = [cd[3] for cd in cands]
    left = flat.real < 0
    saddle_h = np.full(flat.shape, np.inf)
    if left.any():
        saddle_h[left] = _saddle_peak(alpha, flat[left])
    peaks.append(saddle_h)
    spans.append(np.where(left, np.abs((flat * flat).imag) + (alpha - 1.0) * np.abs(np.angle(-flat)),
                          np.inf))
    peaks, spans = np.array(peaks), np.array(spans)

    # cheapest affordable path whose peak is within _PATH_GAIN of the lowest
    affordable = spans <= math.pi * PANEL_BUDGET
    floor = np.min(np.where(affordable, peaks, np.inf), axis=0)
    good = affordable & (peaks <= floor + _PATH_GAIN)
    pick = np.where(good.any(axis=0), np.argmin(np.where(good, spans, np.inf), axis=0),
                    np.argmin(spans, axis=0))
    via_saddle = pick == len(cands)
    cols = np.arange(flat.size)
    ray_pick = np.minimum(pick, len(cands) - 1)
    phi = np.array([np.broadcast_to(cd[0], flat.shape) for cd in cands])[ray_pick, cols]
    rstar = np.array([cd[1] for cd in cands])[ray_pick, cols]
    h_ray = peaks[ray_pick, cols]

    # bound memory by integrating blocks of at most _BLOCK_PANELS estimated panels
    cost = _panels(np.minimum(spans[pick, cols], 2 * math.pi * PANEL_BUDGET))
    block = np.floor_divide(np.cumsum(cost) - cost, _BLOCK_PANELS)
    out = np.empty(flat.shape, dtype=complex)
    for b in np.unique(block):
        sel = block == b
        ray = sel & ~via_saddle
        if ray.any():
            out[ray] = _ray_integral(alpha, q, c, flat[ray], phi[ray], rstar[ray], h_ray[ray],
                                     rel_tol, max_subdivisions)
        sad = sel & via_saddle
        if sad.any():
            out[sad] = _saddle_integral(alpha, q, flat[sad], rel_tol, max_subdivisions)
    return out.reshape(z.shape)


def pcf_d_log(nu: float, z, *, rel_tol: float = INTEGRAL_REL_TOL):
    """Complex log of ``D_ν(z)`` by the integral route, vectorized over ``z``."""
    alpha = -float(nu)
    if not alpha > 0:
        raise DomainError(f"integral route needs nu < 0, got {nu!r}")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return log_table_integral(alpha, z, rel_tol=rel_tol) - 0.25 * z * z - math.lgamma(alpha)


def _series_parts(nu, z, ctl, mp):
    if mp:
        nu_ = mpmath.mpf(nu)
        z = mpmath.mpc(z)
        half, three_half = mpmath.mpf(1) / 2, mpmath.mpf(3) / 2
        c1 = mpmath.rgamma((1 - nu_) / 2)
        c2 = mpmath.sqrt(2) * z * mpmath.rgamma(-nu_ / 2)
    else:
        nu_ = nu
        half, three_half = 0.5, 1.5
        c1 = rgamma((1.0 - nu) / 2.0)
        c2 = math.sqrt(2.0) * z * rgamma(-nu / 2.0)
    w = z * z / 2
    f1, s1 = kummer_series(-nu_ / 2, half, w, ctl)
    f2, s2 = kummer_series((1 - nu_) / 2, three_half, w, ctl)
    value = c1 * f1 - c2 * f2
    scale = abs(c1) * s1 + abs(c2) * s2
    return value, scale


def _series_log(nu: float, z: complex, ctl: SeriesControl) -> complex:
    prefactor = 0.5 * math.log(math.pi) + 0.5 * nu * math.log(2.0) - 0.25 * z * z
    value, scale = _series_parts(nu, z, ctl, mp=False)
    if scale == 0:
        return complex(-math.inf, 0.0)
    kappa = scale / abs(value) if value != 0 else math.inf
    if kappa <= 64.0:
        return prefactor + cmath.log(value)

    bits = 80 + (int(math.log2(kappa)) if math.isfinite(kappa) else 64)
    for _ in range(8):
        with mpmath.workprec(bits):
            mctl = SeriesControl(rel_tol=float(mpmath.mpf(2) ** (-bits)), max_terms=ctl.max_terms)
            value, scale = _series_parts(nu, z, mctl, mp=True)
            if value == 0:
                needed = bits + 64
            else:
                kappa = scale / abs(value)
                needed = 64 + float(mpmath.log(kappa, 2))
            if bits >= needed:
                return prefactor + complex(mpmath.log(value))
        bits = int(needed) + 32
    raise AccuracyError(f"1F1 route for D_{nu}({z}) lost all precision", residual=math.inf)


def pcf_d(nu: float, z: complex, route: str | None = None,
          ctl: SeriesControl | None = None) -> ScaledComplex:
    """``D_ν(z)`` as a :class:`ScaledComplex`.

    ``route`` is ``"integral"`` (requires ν < 0), ``"series"`` (requires
    |ν| ≤ 30 and |z| ≤ 8) or ``None`` to pick the integral route for
    negative orders and the series otherwise.
    """
    nu = float(nu)
    z = complex(z)
    if nu > 1:
        raise DomainError(f"pcf_d supports nu <= 1, got {nu!r}")
    if route is None:
        route = "integral" if nu < 0 else "series"
    if route == "integral":
        return ScaledComplex.from_log(pcf_d_log(nu, z)[0])
    if route == "series":
        if abs(nu) > SERIES_MAX_ORDER or abs(z) > SERIES_MAX_ABS_Z:
            raise DomainError(f"series route limited to |nu| <= 30, |z| <= 8 (nu={nu}, z={z})")
        return ScaledComplex.from_log(_series_log(nu, z, ctl or SeriesControl()))
    raise ValueError(f"unknown route {route!r}")
