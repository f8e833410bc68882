import math

import pytest

from semiconfined.errors import DomainError
from semiconfined.grid import GridSpec
from semiconfined.limits import (ConvergenceSeries, default_limit_grid, hermite_limit_check,
                                 laguerre_to_hermite_check, reduction_check_g0)
from semiconfined.model import OscillatorParams

A_VALUES = [2.0, 4.0, 8.0, 12.0]


def test_convergence_series_monotone_flag():
    assert ConvergenceSeries.from_values([1, 2, 3], [3.0, 2.0, 1.0]).monotone
    assert not ConvergenceSeries.from_values([1, 2, 3], [3.0, 3.0, 1.0]).monotone
    with pytest.raises(ValueError):
        ConvergenceSeries((1.0,), (1.0, 2.0), True)


@pytest.mark.parametrize("n,pt,a", [(0, (0.0, 0.0), 1.0), (3, (1.2, -0.4), 0.5), (2, (-0.3, 2.5), 2.0)])
def test_reduction_examples(n, pt, a):
    assert reduction_check_g0(n, pt, OscillatorParams(a=a)) <= 1e-12


def test_reduction_requires_zero_field():
    with pytest.raises(DomainError):
        reduction_check_g0(0, (0.0, 0.0), OscillatorParams(a=1.0, g=0.2))


def test_hermite_limit_calibrated_values():
    s = hermite_limit_check(0, 0.0, A_VALUES, default_limit_grid(), OscillatorParams())
    assert s.monotone
    # frozen from the calibration run
    assert s.sup_differences == pytest.approx(
        (2.988899e-02, 1.468223e-02, 7.308631e-03, 4.854146e-03), rel=1e-6)
    assert s.sup_differences[-1] < 0.02


def test_hermite_limit_with_field_decreases():
    s = hermite_limit_check(1, 1.0, A_VALUES, default_limit_grid(), OscillatorParams())
    assert s.monotone
    assert s.parameters == tuple(A_VALUES)


def test_hermite_limit_rejects_unordered():
    with pytest.raises(DomainError):
        hermite_limit_check(0, 0.0, [4.0, 2.0], GridSpec(-1, 1, -1, 1, 3, 3), OscillatorParams())


def test_laguerre_limit_trivial_order():
    s = laguerre_to_hermite_check(0, 0.3, [1e2, 1e3, 1e4])
    assert s.sup_differences == (0.0, 0.0, 0.0)


def test_laguerre_limit_decreases():
    s = laguerre_to_hermite_check(1, 0.5, [1e2, 1e3, 1e4])
    assert s.monotone
    # the n=1 residual is exactly sqrt(2/α)
    assert s.sup_differences == pytest.approx([math.sqrt(2 / a) for a in s.parameters], rel=1e-9)


def test_laguerre_limit_second_order_residual():
    # mpmath at 40 digits: residual at α = 1e4 is 0.0567685424949238..., target H_2(-1)/2 = 1
    s = laguerre_to_hermite_check(2, -1.0, [1e4])
    assert s.sup_differences[0] == pytest.approx(0.05676854249492380195, rel=1e-8)
