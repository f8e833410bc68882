import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiconfined.errors import DomainError
from semiconfined.grid import GridSpec
from semiconfined.husimi import (PhasePoint, husimi, husimi_double_sum, husimi_double_sum_g0,
                                 husimi_from_amplitude, husimi_grid, husimi_hermite,
                                 husimi_many, husimi_semiconfined, q_amp_hermite,
                                 q_amp_semiconfined)
from semiconfined.model import ModelKind, OscillatorParams

UNIT = OscillatorParams()
BOUND = 1 / math.pi + 1e-12


def test_q_amp_hermite_examples():
    q0 = q_amp_hermite(0, PhasePoint(0.0, 0.0), UNIT)
    assert q0.log_modulus == pytest.approx(0.25 * math.log(math.pi), abs=1e-15)
    assert q0.phase == 0.0
    # Δ = 1, η = 0 at g = 0 means x = 1, p = 0
    q1 = q_amp_hermite(1, PhasePoint(1.0, 0.0), UNIT)
    ref = math.exp(-0.25) * math.pi ** 0.25 / math.sqrt(2)
    assert q1.abs() == pytest.approx(ref, rel=1e-14)


def test_q_amp_hermite_against_quadrature_reference():
    # |Q| from mpmath quadrature of the overlap integral, n=2, x=0.7, p=-1.3, g=1
    q = q_amp_hermite(2, PhasePoint(0.7, -1.3), OscillatorParams(g=1.0))
    assert q.abs() == pytest.approx(0.6860263086077417553106354, rel=1e-10)


def test_husimi_hermite_examples():
    assert husimi_hermite(0, (0.0, 0.0), UNIT) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert husimi_hermite(1, (0.0, 0.0), UNIT) == 0.0
    assert husimi_hermite(1, (0.0, math.sqrt(2)), UNIT) == pytest.approx(
        math.exp(-1) / (2 * math.pi), rel=1e-14)


def test_husimi_semiconfined_ground_state_value():
    # 2 e^{-1} π^{-3/2}, confirmed by mpmath quadrature of the definition
    w = husimi_semiconfined(0, (0.0, 0.0), OscillatorParams(a=1.0))
    assert w == pytest.approx(0.1321328202579876797837378, rel=1e-12)


def test_q_amp_semiconfined_n0_is_single_term():
    params = OscillatorParams(a=1.0)
    q = q_amp_semiconfined(0, (0.0, 0.0), params)
    assert husimi_from_amplitude(q, params) == pytest.approx(
        husimi_semiconfined(0, (0.0, 0.0), params), rel=1e-15)


def test_q_amp_semiconfined_extreme_finite():
    q = q_amp_semiconfined(3, (1.0, 2.0), OscillatorParams(a=12.0, g=1.0))
    assert math.isfinite(q.log_modulus)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.floats(-4, 4), st.floats(-4, 4), st.floats(0.5, 2), st.floats(0, 1))
def test_double_sum_is_real(n, x, p, a, g):
    params = OscillatorParams(a=a, g=g)
    val = husimi_double_sum(n, (x, p), params)
    assert abs(val.imag) <= 1e-10 * max(abs(val.real), 1e-300)
    assert val.real == pytest.approx(husimi_semiconfined(n, (x, p), params), rel=1e-10, abs=1e-300)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.floats(-4, 4), st.floats(-4, 4), st.floats(0.5, 2))
def test_g0_double_sum_matches_general_route(n, x, p, a):
    params = OscillatorParams(a=a)
    w = husimi_semiconfined(n, (x, p), params)
    assert husimi_double_sum_g0(n, (x, p), params) == pytest.approx(w, rel=1e-12, abs=1e-300)


def test_g0_double_sum_requires_zero_field():
    with pytest.raises(DomainError):
        husimi_double_sum_g0(0, (0.0, 0.0), OscillatorParams(a=1.0, g=0.5))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.floats(-6, 6), st.floats(-6, 6),
       st.sampled_from([0.5, 2.0, 12.0, math.inf]), st.sampled_from([0.0, 1.0]))
def test_bound(n, x, p, a, g):
    w = husimi(n, (x, p), OscillatorParams(a=a, g=g))
    assert 0.0 <= w <= BOUND


def test_points_left_of_wall_are_defined():
    w = husimi_semiconfined(1, (-3.0, 0.5), OscillatorParams(a=2.0))
    assert 0.0 < w < husimi_semiconfined(1, (0.0, 0.5), OscillatorParams(a=2.0))


def test_husimi_many_broadcasts():
    xs = np.linspace(-1, 1, 3)[:, None]
    ps = np.linspace(-1, 1, 4)[None, :]
    vals = husimi_many(1, xs, ps, OscillatorParams(a=2.0))
    assert vals.shape == (3, 4)
    assert vals[2, 1] == pytest.approx(husimi(1, (1.0, ps[0, 1]), OscillatorParams(a=2.0)), rel=1e-15)


def test_grid_matches_pointwise_calls():
    spec = GridSpec(-1.0, 1.0, -0.5, 0.5, 2, 2)
    dg = husimi_grid(ModelKind.HERMITE, 0, spec, UNIT)
    xs, ps = spec.axes()
    expected = [husimi_hermite(0, (x, p), UNIT) for x in xs for p in ps]
    assert dg.flat() == pytest.approx(expected, rel=1e-15)
    assert dg.metadata["model"] == "hermite" and dg.metadata["n"] == 0


def test_grid_riemann_sum_normalizes():
    spec = GridSpec(-8.0, 8.0, -8.0, 8.0, 161, 161)
    dg = husimi_grid(ModelKind.HERMITE, 1, spec, OscillatorParams(g=0.5))
    assert dg.values.sum() * spec.cell_area == pytest.approx(1.0, abs=1e-6)


def test_grid_rejects_semiconfined_without_wall():
    with pytest.raises(DomainError):
        husimi_grid(ModelKind.SEMICONFINED, 0, GridSpec(-1, 1, -1, 1, 2, 2), UNIT)


def test_negative_n_rejected():
    with pytest.raises(DomainError):
        husimi(-1, (0.0, 0.0), UNIT)
