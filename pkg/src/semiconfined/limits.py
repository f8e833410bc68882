"""Numerical checks of the reduction and limit relations between the models."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .grid import GridSpec
from .husimi import PhasePoint, husimi_double_sum_g0, husimi_hermite_many, husimi_semiconfined
from .husimi import husimi_semiconfined_many
from .specfun import hermite, laguerre


@dataclass(frozen=True)
class ConvergenceSeries:
    parameters: tuple[float, ...]
    sup_differences: tuple[float, ...]
    monotone: bool

    def __post_init__(self):
        if len(self.parameters) != len(self.sup_differences):
            raise ValueError("parameters and sup_differences must have equal length")

    @classmethod
    def from_values(cls, parameters, differences) -> ConvergenceSeries:
        diffs = tuple(float(d) for d in differences)
        monotone = all(b < a for a, b in zip(diffs, diffs[1:]))
        return cls(tuple(float(p) for p in parameters), diffs, monotone)

    def to_line(self) -> str:
        pairs = " ".join(f"{p:g}:{d:.6e}" for p, d in zip(self.parameters, self.sup_differences))
        return f"monotone={self.monotone} {pairs}"


def reduction_check_g0(n: int, pt: PhasePoint, params) -> float:
    """Relative gap between the general-field amplitude route at ``g = 0``
    and the field-free double-sum closed form."""
    if params.g != 0:
        raise DomainError("reduction_check_g0 requires g = 0")
    general = husimi_semiconfined(n, pt, params)
    special = husimi_double_sum_g0(n, pt, params)
    scale = max(abs(general), abs(special))
    return abs(general - special) / scale if scale > 0 else 0.0


def _strictly_increasing(values):
    return all(b > a for a, b in zip(values, values[1:]))


def hermite_limit_check(n: int, g: float, a_values, grid: GridSpec, params) -> ConvergenceSeries:
    """Sup-norm distance between the semiconfined and Hermite distributions
    on ``grid`` for each wall distance in ``a_values``."""
    a_values = [float(a) for a in a_values]
    if not a_values or not _strictly_increasing(a_values):
        raise DomainError("a_values must be a non-empty strictly increasing list")
    xs, ps = grid.axes()
    xx, pp = np.meshgrid(xs, ps, indexing="ij")
    base = replace(params, a=math.inf, g=g)
    target = husimi_hermite_many(n, xx, pp, base)
    diffs = []
    for a in a_values:
        sc = replace(params, a=a, g=g)
        diffs.append(float(np.max(np.abs(husimi_semiconfined_many(n, xx, pp, sc) - target))))
    return ConvergenceSeries.from_values(a_values, diffs)


def laguerre_to_hermite_check(n: int, x: float, alpha_values) -> ConvergenceSeries:
    """Residual of ``(2/α)^{n/2} L_n^{(α)}(√(2α) x + α) → (-1)^n H_n(x) / n!``."""
    alpha_values = [float(a) for a in alpha_values]
    if not alpha_values or not _strictly_increasing(alpha_values):
        raise DomainError("alpha_values must be a non-empty strictly increasing list")
    target = (-1) ** n * float(hermite(n, x)) / math.factorial(n)
    residuals = []
    for alpha in alpha_values:
        value = (2.0 / alpha) ** (n / 2) * float(laguerre(n, alpha, math.sqrt(2.0 * alpha) * x + alpha))
        residuals.append(abs(value - target))
    return ConvergenceSeries.from_values(alpha_values, residuals)


def default_limit_grid() -> GridSpec:
    return GridSpec(-3.0, 3.0, -3.0, 3.0, 21, 21)
