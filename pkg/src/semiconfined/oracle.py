"""Independent numerical checks of the closed forms.

Everything here integrates definitions directly with SciPy's adaptive
quadrature (``quad`` / ``quad_vec``); none of it goes through the parabolic
cylinder machinery used by the closed forms, except where a check compares
against it explicitly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy import integrate

from .errors import AccuracyError
from .grid import fmt
from .husimi import husimi_many
from .model import ModelKind, OscillatorParams, derive, psi
from .specfun import hermite, integrate_batch, pcf_d

# exp(-41.45) = 1e-18: Gaussian envelope cut
ENVELOPE_CUT = math.log(1e18)
MASS_CUT = 1e-12


@dataclass(frozen=True)
class QuadratureControl:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


@dataclass(frozen=True)
class VerificationReport:
    check: str
    max_abs_error: float
    max_rel_error: float
    points_tested: int
    passed: bool
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "points_tested", int(self.points_tested))

    def to_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.check} max_abs_error={fmt(self.max_abs_error)} "
                f"max_rel_error={fmt(self.max_rel_error)} points={self.points_tested}"
                + (f" notes={self.notes}" if self.notes else ""))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _quad(f, lo, hi, ctl, points=None, roundoff_slack=0.0, **kw):
    """SciPy ``quad`` that raises on any failure flag.

    A roundoff flag is tolerated when the reported error estimate is within
    ``roundoff_slack``.
    """
    val, err, _info, *msg = integrate.quad(f, lo, hi, epsabs=ctl.abs_tol, epsrel=ctl.rel_tol,
                                           limit=ctl.max_subdivisions, points=points,
                                           full_output=1, **kw)
    if msg:
        text = str(msg[0]).splitlines()[0]
        if not ("roundoff" in text and err <= roundoff_slack):
            raise AccuracyError(f"quadrature did not converge: {text}", residual=err)
    return val, err


# -- Husimi by direct quadrature -------------------------------------------

def husimi_quadrature_many(model: ModelKind, n: int, x, p, params: OscillatorParams,
                           ctl: QuadratureControl | None = None) -> np.ndarray:
    """Direct quadrature of the Husimi definition at several phase points.

    One vector-valued adaptive integral over ``x'`` carries the real and
    imaginary parts of every point's overlap.
    """
    ctl = ctl or QuadratureControl()
    dp = derive(params)
    hb, lam = params.hbar, dp.lambda0
    x = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    p = np.atleast_1d(np.asarray(p, dtype=float)).ravel()
    x, p = np.broadcast_arrays(x, p)
    half = math.sqrt(2.0 * ENVELOPE_CUT) / lam
    lo, hi = x.min() - half, x.max() + half
    if model is ModelKind.SEMICONFINED:
        lo = max(lo, -params.a)
    pmax = float(np.abs(p).max())
    if hi <= lo:
        return np.zeros(x.shape)

    breaks = [lo]
    if pmax > 0:
        step = hb / (10.0 * pmax)
        count = int(math.ceil((hi - lo) / step))
        breaks = list(np.linspace(lo, hi, count + 1)[:-1])
    if model is ModelKind.SEMICONFINED and lo < -params.a + 1.0 / lam < hi:
        breaks.append(-params.a + 1.0 / lam)
    breaks = sorted(set(breaks))[1:]

    def integrand(t):
        wf = psi(n, t, params, dp) if model is params.kind else _psi_of(model, n, t, params, dp)
        kern = np.exp(-0.5 * lam * lam * (x - t) ** 2)
        phase = -p * t / hb
        return np.concatenate([wf * kern * np.cos(phase), wf * kern * np.sin(phase)])

    limit = max(ctl.max_subdivisions, len(breaks) + 50)
    res, err = integrate.quad_vec(integrand, lo, hi, epsabs=ctl.abs_tol, epsrel=ctl.rel_tol,
                                  norm="max", limit=limit, points=breaks or None)
    re, im = res[: x.size], res[x.size:]
    # (2π)^{-3/2} (ħ Δx)^{-1} with Δx = 1/(√2 λ₀)
    pref = math.sqrt(2.0) * lam / ((2.0 * math.pi) ** 1.5 * hb)
    return pref * (re * re + im * im)


def _psi_of(model, n, t, params, dp):
    from .model import psi_hermite, psi_semiconfined
    if model is ModelKind.HERMITE:
        return psi_hermite(n, t, dp)
    return psi_semiconfined(n, t, params, dp)


def husimi_quadrature(model: ModelKind, n: int, pt, params: OscillatorParams,
                      ctl: QuadratureControl | None = None) -> float:
    return float(husimi_quadrature_many(model, n, pt[0], pt[1], params, ctl)[0])


def cross_validate(model: ModelKind, n: int, params: OscillatorParams, xs, ps, *,
                   tol: float = 1e-8, ctl: QuadratureControl | None = None,
                   name: str | None = None) -> VerificationReport:
    """Closed form against quadrature on the tensor grid ``xs × ps``.

    Passing requires ``|closed - quad| <= tol * max(1, closed)`` everywhere
    and every closed-form value finite; ``max_rel_error`` reports the
    largest deviation in those units.
    """
    xx, pp = np.meshgrid(np.asarray(xs, float), np.asarray(ps, float), indexing="ij")
    closed = np.asarray(husimi_many(n, xx, pp, params, model)).ravel()
    quad = husimi_quadrature_many(model, n, xx.ravel(), pp.ravel(), params, ctl)
    diff = np.abs(closed - quad)
    scale = np.maximum(1.0, np.abs(closed))
    rel = diff / scale
    finite = bool(np.all(np.isfinite(closed)))
    passed = finite and bool(np.all(diff <= tol * scale))
    name = name or f"cross_validation[{model.value},n={n},a={params.a},g={params.g}]"
    return VerificationReport(name, float(diff.max()), float(rel.max()), int(diff.size), passed,
                              notes="" if finite else "non-finite closed-form values")


# -- orthonormality ---------------------------------------------------------

def _scan_window(f, lo, hi, cut=1e-18, samples=4001):
    """Shrink ``[lo, hi]`` to where ``|f|`` exceeds ``cut`` times its peak."""
    t = np.linspace(lo, hi, samples)
    v = np.abs(f(t))
    peak = v.max()
    if peak == 0:
        return lo, hi, float(t[0])
    keep = np.flatnonzero(v >= cut * peak)
    i0, i1 = max(keep[0] - 1, 0), min(keep[-1] + 1, samples - 1)
    return float(t[i0]), float(t[i1]), float(t[int(np.argmax(v))])


def orthonormality_check(model: ModelKind, m: int, n: int, params: OscillatorParams,
                         ctl: QuadratureControl | None = None, tol: float = 1e-8,
                         max_index: int = 4) -> VerificationReport:
    ctl = ctl or QuadratureControl()
    if max(m, n) > max_index:
        raise ValueError(f"orthonormality_check supports indices up to {max_index}")
    dp = derive(params)

    def f(t):
        return _psi_of(model, m, t, params, dp) * _psi_of(model, n, t, params, dp)

    span = 40.0 / dp.lambda0
    if model is ModelKind.HERMITE:
        lo, hi = -dp.x0 - span, -dp.x0 + span
    else:
        lo, hi = -params.a, -params.a + 4.0 * params.a + 2.0 * span
    lo, hi, peak = _scan_window(f, lo, hi)
    if model is ModelKind.SEMICONFINED:
        lo = max(lo, -params.a)
    val, _ = _quad(f, lo, hi, ctl, points=[peak] if lo < peak < hi else None)
    target = 1.0 if m == n else 0.0
    err = abs(val - target)
    return VerificationReport(f"orthonormality[{model.value},m={m},n={n},a={params.a},g={params.g}]",
                              err, err, 1, err <= tol, notes=f"overlap={fmt(val)}")


# -- integral identities ----------------------------------------------------

def table_integral_check(alpha: float, q: complex, ctl: QuadratureControl | None = None,
                         tol: float = 1e-10) -> VerificationReport:
    """Quadrature of ``∫₀^∞ y^{α-1} e^{-y²/2 - qy} dy`` against ``Γ(α) e^{q²/4} D_{-α}(q)``.

    Compared through log-magnitude and phase so that large orders stay finite.
    """
    ctl = ctl or QuadratureControl()
    q = complex(q)

    def logmod(y):
        with np.errstate(divide="ignore"):
            return (alpha - 1.0) * np.log(y) - 0.5 * y * y - q.real * y

    # dense scan for the scale and the window, independent of any closed-form peak
    t = np.linspace(1e-12, 60.0 + abs(q.real) + 3.0 * math.sqrt(alpha), 20001)
    lm = logmod(t)
    top = float(lm.max())
    inside = np.flatnonzero(lm > top - 60.0)
    lo = 0.0 if inside[0] == 0 else float(t[inside[0] - 1])
    hi = float(t[min(inside[-1] + 1, t.size - 1)])
    peak = float(t[int(np.argmax(lm))])
    if lo == 0.0:
        # y^{α-1} at the origin goes to QUADPACK's algebraic-weight rule
        def env(y):
            return math.exp(-0.5 * y * y - q.real * y - top)
        kw = {"weight": "alg", "wvar": (alpha - 1.0, 0.0)}
    else:
        def env(y):
            return math.exp(logmod(y) - top)
        kw = {"points": [peak] if lo < peak < hi else None}
    re, _ = _quad(lambda y: env(y) * math.cos(q.imag * y), lo, hi, ctl, **kw)
    im, _ = _quad(lambda y: -env(y) * math.sin(q.imag * y), lo, hi, ctl, **kw) if q.imag else (0.0, 0.0)
    lhs_log = top + np.log(complex(re, im))

    d = pcf_d(-alpha, q)
    rhs_log = math.lgamma(alpha) + 0.25 * q * q + d.log()
    ratio = np.exp(lhs_log - rhs_log)
    rel = abs(ratio - 1.0)
    return VerificationReport(f"table_integral[alpha={alpha},q={q}]", rel, rel, 1, rel <= tol,
                              notes=f"log|I|={fmt(lhs_log.real)}")


def gaussian_identity_check(p_values=(0.5, 1.0, 2.0), q_values=None, tol: float = 1e-12,
                            ctl: QuadratureControl | None = None) -> VerificationReport:
    """``∫ e^{-p x² - q x} dx = √(π/p) e^{q²/4p}`` by quadrature."""
    ctl = ctl or QuadratureControl(rel_tol=1e-13, abs_tol=1e-14)
    if q_values is None:
        q_values = [0, 1.5, -3, 2j, -1 + 1j, 2.1 - 2.1j, 3j]
    worst_abs = worst_rel = 0.0
    count = 0
    for pv in p_values:
        for qv in q_values:
            qv = complex(qv)
            c = -qv.real / (2 * pv)  # centre of the modulus
            w = math.sqrt(2 * 50.0 / pv)
            exact = math.sqrt(math.pi / pv) * np.exp(qv * qv / (4 * pv))
            # an odd integrand makes one part vanish, so the floor follows |exact|
            local = replace(ctl, abs_tol=0.1 * tol * abs(exact))
            slack = tol * abs(exact)
            re, _ = _quad(lambda x: math.exp(-pv * x * x - qv.real * x) * math.cos(qv.imag * x),
                          c - w, c + w, local, roundoff_slack=slack)
            im = 0.0
            if qv.imag:
                im, _ = _quad(lambda x: -math.exp(-pv * x * x - qv.real * x) * math.sin(qv.imag * x),
                              c - w, c + w, local, roundoff_slack=slack)
            err = abs(complex(re, im) - exact)
            worst_abs = max(worst_abs, err)
            worst_rel = max(worst_rel, err / abs(exact))
            count += 1
    return VerificationReport("gaussian_identity", worst_abs, worst_rel, count, worst_rel <= tol)


def hermite_table_integral_check(n_max: int = 4, x_values=None, tol: float = 1e-10,
                                 ctl: QuadratureControl | None = None) -> VerificationReport:
    """``∫ e^{-(x-y)²} H_n(y) dy = √π (2x)^n`` by quadrature."""
    ctl = ctl or QuadratureControl(rel_tol=1e-12, abs_tol=1e-13)
    if x_values is None:
        x_values = np.linspace(-2, 2, 9)
    worst_abs = worst_rel = 0.0
    count = 0
    for n in range(n_max + 1):
        for x in x_values:
            val, _ = _quad(lambda y: math.exp(-(x - y) ** 2) * hermite(n, y), x - 9.0, x + 9.0, ctl)
            exact = math.sqrt(math.pi) * (2 * x) ** n
            err = abs(val - exact)
            worst_abs = max(worst_abs, err)
            worst_rel = max(worst_rel, err / max(1.0, abs(exact)))
            count += 1
    return VerificationReport("hermite_table_integral", worst_abs, worst_rel, count, worst_rel <= tol)


# -- phase-space normalization ---------------------------------------------

def _window(model, n, params, dp, cut=MASS_CUT, samples=41, max_expansions=30):
    lam, hb = dp.lambda0, params.hbar
    if model is ModelKind.HERMITE:
        xlo, xhi = -dp.x0 - 6.0 / lam, -dp.x0 + 6.0 / lam
    else:
        xlo, xhi = -params.a - 6.0 / lam, -params.a + 2.0 * params.a + 6.0 / lam
    plo, phi = -6.0 * hb * lam, 6.0 * hb * lam
    for _ in range(max_expansions):
        xs = np.linspace(xlo, xhi, samples)
        ps = np.linspace(plo, phi, samples)
        w = husimi_many(n, xs[:, None], ps[None, :], params, model)
        peak = w.max()
        edges = {"xlo": w[0].max(), "xhi": w[-1].max(), "plo": w[:, 0].max(), "phi": w[:, -1].max()}
        grow = {k for k, v in edges.items() if v > cut * peak}
        if not grow:
            return xlo, xhi, plo, phi
        # p-tails may be algebraic, so p grows geometrically
        dx, dpp = 0.5 * (xhi - xlo), phi - plo
        if "xlo" in grow:
            xlo -= dx
        if "xhi" in grow:
            xhi += dx
        if "plo" in grow:
            plo -= dpp
        if "phi" in grow:
            phi += dpp
    raise AccuracyError("normalization window did not capture the distribution")


def normalization_check(model: ModelKind, n: int, params: OscillatorParams,
                        ctl: QuadratureControl | None = None, tol: float = 1e-4) -> VerificationReport:
    """Iterated quadrature of the closed form over phase space (p inner, x outer)."""
    ctl = ctl or QuadratureControl(rel_tol=1e-8, abs_tol=1e-14)
    dp = derive(params)
    xlo, xhi, plo, phi = _window(model, n, params, dp)

    # p = c tan(t) keeps the algebraic p-tails of weakly confined states cheap
    c = 2.0 * params.hbar * dp.lambda0
    tlo, thi = math.atan(plo / c), math.atan(phi / c)

    def marginal(xnodes, _owner):
        flat = xnodes.ravel()
        m = flat.size

        def inner(tnodes, owner):
            pnodes = c * np.tan(tnodes)
            jac = c / np.cos(tnodes) ** 2
            return husimi_many(n, flat[owner][:, None], pnodes, params, model) * jac

        vals, _ = integrate_batch(inner, np.full(m, tlo), np.full(m, thi), rel_tol=ctl.rel_tol,
                                  abs_tol=ctl.abs_tol, max_subdivisions=ctl.max_subdivisions,
                                  initial_panels=4)
        return vals.reshape(xnodes.shape)

    total, err = integrate_batch(marginal, [xlo], [xhi], rel_tol=ctl.rel_tol, abs_tol=ctl.abs_tol,
                                 max_subdivisions=ctl.max_subdivisions, initial_panels=4)
    total = float(total[0])
    dev = abs(total - 1.0)
    return VerificationReport(
        f"normalization[{model.value},n={n},a={params.a},g={params.g}]", dev, dev, 1, dev <= tol,
        notes=f"integral={fmt(total)} window=x[{fmt(xlo)},{fmt(xhi)}]p[{fmt(plo)},{fmt(phi)}]")
