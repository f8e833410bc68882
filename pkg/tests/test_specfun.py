import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiconfined.errors import AccuracyError, DomainError
from semiconfined.specfun import (ScaledComplex, SeriesControl, hermite, integrate_batch,
                                  kummer_1f1, laguerre, log_gamma, log_pochhammer,
                                  log_sum_exp, log_table_integral, pcf_d, pochhammer_int, rgamma,
                                  scaled_sum)
from semiconfined.specfun.parabolic import CANCELLATION_LIMIT

finite_log = st.floats(min_value=-599.0, max_value=599.0)
phases = st.floats(min_value=-math.pi, max_value=math.pi, exclude_min=True)


# -- gamma ------------------------------------------------------------------

def test_log_gamma_values():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-13)
    # mpmath.loggamma(145) at 40 digits
    assert log_gamma(145.0) == pytest.approx(575.0575390247102067618644, rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_pochhammer_values():
    assert log_pochhammer(3.7, 0) == 0.0
    assert log_pochhammer(1.0, 4) == pytest.approx(math.log(24), rel=1e-15)
    assert log_pochhammer(289.0, 3) == pytest.approx(math.log(24388710), rel=1e-15)
    assert log_pochhammer(2.5, 40) == pytest.approx(math.lgamma(42.5) - math.lgamma(2.5), rel=1e-13)


def test_pochhammer_int_signed():
    assert pochhammer_int(-3, 0) == 1
    assert pochhammer_int(-3, 2) == 6
    assert pochhammer_int(-3, 3) == -6
    assert pochhammer_int(-3, 4) == 0


def test_rgamma_poles_and_values():
    assert rgamma(0.0) == 0.0 and rgamma(-3.0) == 0.0
    assert rgamma(0.5) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert rgamma(200.0) == 0.0


# -- orthogonal polynomials ---------------------------------------------------

def test_hermite_examples():
    assert hermite(0, 3.7) == 1.0
    assert hermite(2, 0.0) == -2.0
    assert hermite(3, 1.5) == 9.0


def test_laguerre_examples():
    assert laguerre(0, 4.2, -1.3) == 1.0
    assert laguerre(1, 2.0, 0.5) == 2.5
    assert laguerre(2, 1.0, 0.0) == 3.0
    with pytest.raises(DomainError):
        laguerre(2, -1.0, 0.3)


@given(st.floats(min_value=-5, max_value=5))
def test_hermite_low_order_closed_forms(x):
    forms = [1.0, 2 * x, 4 * x * x - 2, 8 * x ** 3 - 12 * x]
    for n, ref in enumerate(forms):
        assert hermite(n, x) == pytest.approx(ref, rel=1e-14, abs=1e-14 * (1 + abs(x)) ** n)


@given(st.floats(min_value=-0.9, max_value=20), st.floats(min_value=-5, max_value=30))
def test_laguerre_low_order_closed_forms(alpha, x):
    forms = [1.0, 1 + alpha - x,
             (x * x - 2 * (alpha + 2) * x + (alpha + 1) * (alpha + 2)) / 2,
             (-x ** 3 + 3 * (alpha + 3) * x * x - 3 * (alpha + 2) * (alpha + 3) * x
              + (alpha + 1) * (alpha + 2) * (alpha + 3)) / 6]
    for n, ref in enumerate(forms):
        scale = (1 + abs(alpha) + abs(x)) ** n
        assert laguerre(n, alpha, x) == pytest.approx(ref, rel=1e-13, abs=1e-13 * scale)


def test_polynomials_vectorize():
    xs = np.linspace(-1, 1, 5)
    assert np.allclose(hermite(2, xs), 4 * xs ** 2 - 2)
    assert np.allclose(laguerre(1, 0.5, xs), 1.5 - xs)


# -- 1F1 --------------------------------------------------------------------

def test_kummer_examples():
    assert kummer_1f1(0.3, 1.7, 0.0) == 1.0
    assert kummer_1f1(1.0, 1.0, 1 + 1j) == pytest.approx(math.e * complex(math.cos(1), math.sin(1)),
                                                        rel=1e-14)
    # mpmath.hyp1f1(-0.5, 0.5, -2) at 40 digits
    assert kummer_1f1(-0.5, 0.5, -2.0) == pytest.approx(2.527911309881829097756847, rel=1e-12)


def test_kummer_rejects_nonpositive_integer_b():
    with pytest.raises(DomainError):
        kummer_1f1(0.5, -2.0, 1.0)


def test_kummer_reports_nonconvergence():
    with pytest.raises(AccuracyError) as info:
        kummer_1f1(0.5, 1.5, 40.0, SeriesControl(max_terms=5))
    assert info.value.residual > 0


@given(st.floats(0, 5), st.floats(0, 2 * math.pi))
def test_kummer_exponential_identity(r, th):
    z = cmath.rect(r, th)
    assert abs(kummer_1f1(1.0, 1.0, z) - cmath.exp(z)) <= 1e-12 * abs(cmath.exp(z))


# -- ScaledComplex ------------------------------------------------------------

@given(finite_log, phases)
def test_scaled_round_trip(lm, ph):
    s = ScaledComplex(lm, ph)
    back = ScaledComplex.from_complex(s.to_complex())
    assert back.log_modulus == pytest.approx(lm, abs=1e-12)
    assert abs(cmath.exp(1j * (back.phase - ph)) - 1) <= 1e-12


def test_scaled_zero():
    z = ScaledComplex.from_complex(0)
    assert z.log_modulus == -math.inf and z.phase == 0.0 and z.is_zero
    assert scaled_sum([z, ScaledComplex(0.0, 0.0)]).to_complex() == 1


def test_scaled_sum_survives_overflow():
    terms = [ScaledComplex(800.0, 0.0), ScaledComplex(800.0 + math.log(2), math.pi)]
    s = scaled_sum(terms)
    assert s.log_modulus == pytest.approx(800.0, abs=1e-12)
    assert abs(abs(s.phase) - math.pi) < 1e-12


def test_log_sum_exp_zero_slice():
    out = log_sum_exp(np.array([[complex(-np.inf, 0)], [complex(-np.inf, 0)]]), axis=0)
    assert np.isneginf(out.real).all()


# -- quadrature engine ----------------------------------------------------------

def test_integrate_batch_polynomial_and_gaussian():
    def f(t, owner):
        return np.where(owner[:, None] == 0, t ** 3, np.exp(-t * t))

    vals, errs = integrate_batch(f, [0.0, -8.0], [2.0, 8.0], rel_tol=1e-13)
    assert vals[0] == pytest.approx(4.0, rel=1e-14)
    assert vals[1] == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert np.all(errs >= 0)


def test_integrate_batch_reports_exhaustion():
    with pytest.raises(AccuracyError):
        integrate_batch(lambda t, o: np.sin(1 / t), [1e-6], [1.0], rel_tol=1e-14, max_subdivisions=4)


# -- parabolic cylinder function -------------------------------------------------

def test_pcf_examples():
    d0 = pcf_d(0.0, 2.0)
    assert d0.log_modulus == pytest.approx(-1.0, abs=1e-14) and d0.phase == 0.0
    assert pcf_d(-2.0, 0.0).to_complex() == pytest.approx(1.0, rel=1e-12)
    # e^{-1/4} ∫₀^∞ e^{-y²/2-y} dy by mpmath quadrature at 40 digits
    assert pcf_d(-1.0, 1.0).to_complex() == pytest.approx(0.510643741079660674895038, rel=1e-11)


def test_pcf_domain():
    with pytest.raises(DomainError):
        pcf_d(1.5, 0.3)
    with pytest.raises(DomainError):
        pcf_d(0.5, 0.3, route="integral")
    with pytest.raises(DomainError):
        pcf_d(-40.0, 0.3, route="series")


@settings(max_examples=40, deadline=None)
@given(st.floats(-30, -0.5), st.floats(-6, 6), st.floats(0.1, 6))
def test_pcf_conjugate_symmetry(nu, x, y):
    a = pcf_d(nu, complex(x, y))
    b = pcf_d(nu, complex(x, -y))
    assert b.log_modulus == pytest.approx(a.log_modulus, abs=1e-13 * max(1.0, abs(a.log_modulus)))
    assert abs(cmath.exp(1j * (a.phase + b.phase)) - 1) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(-20, -1), st.floats(-2.8, 2.8), st.floats(-2.8, 2.8))
def test_pcf_routes_agree(nu, x, y):
    z = complex(x, y)
    a = pcf_d(nu, z, route="integral")
    b = pcf_d(nu, z, route="series")
    assert a.isclose(b, rel_tol=1e-10)


def test_pcf_large_order_finite():
    # the model needs orders near -(145 + n) and moderate complex arguments
    d = pcf_d(-148.0, complex(1.5, -3.0))
    assert math.isfinite(d.log_modulus)


def test_table_integral_matches_closed_form():
    # α = 1, z = 0 is the Gaussian half-integral
    assert np.exp(log_table_integral(1.0, 0.0))[0].real == pytest.approx(math.sqrt(math.pi / 2), rel=1e-13)
    # α = 2: ∫ y e^{-y²/2 - z y} dy = 1 - z e^{z²/2} √(π/2) erfc(z/√2)
    from scipy.special import erfc
    z = 0.7
    ref = 1 - z * math.exp(z * z / 2) * math.sqrt(math.pi / 2) * erfc(z / math.sqrt(2))
    assert np.exp(log_table_integral(2.0, z))[0].real == pytest.approx(ref, rel=1e-12)


def test_table_integral_refuses_rather_than_guesses():
    # far outside the validated envelope the routine must raise, never return garbage
    with pytest.raises(AccuracyError) as info:
        log_table_integral(289.0, complex(2.0, 400.0))
    assert info.value.residual > CANCELLATION_LIMIT or math.isinf(info.value.residual)


def test_table_integral_rejects_bad_order():
    with pytest.raises(DomainError):
        log_table_integral(0.0, 1.0)
