"""Rectangular phase-space grids and their on-disk formats.

Two formats are written:

``csv``
    header ``x,p,value``, one row per cell, x outer and p inner.
``doc``
    one JSON document ``{"metadata": ..., "grid": ..., "values": [...]}``
    with ``values`` in the same row-major order.

Every number is printed with 17 significant digits so that repeated runs
produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DomainError


def fmt(value: float) -> str:
    """Fixed 17-significant-digit rendering used by every output."""
    return format(float(value), ".17g")


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    x_steps: int
    p_steps: int

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x_min, self.x_max, self.p_min, self.p_max)):
            raise DomainError("grid bounds must be finite")
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise DomainError("grid bounds must satisfy min < max on both axes")
        if self.x_steps < 2 or self.p_steps < 2:
            raise DomainError("grids need at least 2 steps per axis")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.x_min, self.x_max, self.x_steps),
                np.linspace(self.p_min, self.p_max, self.p_steps))

    @property
    def cell_area(self) -> float:
        return ((self.x_max - self.x_min) / (self.x_steps - 1)
                * (self.p_max - self.p_min) / (self.p_steps - 1))

    def as_dict(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max, "x_steps": self.x_steps,
                "p_min": self.p_min, "p_max": self.p_max, "p_steps": self.p_steps}


def grid_metadata(model, n: int, params, **extra) -> dict:
    from .specfun.parabolic import INTEGRAL_REL_TOL, LOG_WINDOW

    meta = {
        "model": model.value,
        "n": int(n),
        "m0": params.m0,
        "omega": params.omega,
        "hbar": params.hbar,
        "a": "inf" if math.isinf(params.a) else params.a,
        "g": params.g,
        "tolerances": {"pcf_integral_rel_tol": INTEGRAL_REL_TOL, "pcf_log_window": LOG_WINDOW},
        "version": __version__,
    }
    meta.update(extra)
    return meta


def _json_value(obj):
    # floats go through fmt so the whole document is deterministic
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}"
                               for k, v in sorted(obj.items())) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_document(obj) -> str:
    return _json_value(obj) + "\n"


@dataclass
class DistributionGrid:
    spec: GridSpec
    values: np.ndarray  # shape (x_steps, p_steps)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(self.spec.x_steps, self.spec.p_steps)

    def flat(self) -> list[float]:
        return [float(v) for v in self.values.ravel(order="C")]

    def to_csv(self) -> str:
        xs, ps = self.spec.axes()
        lines = ["x,p,value"]
        for i, x in enumerate(xs):
            for j, p in enumerate(ps):
                lines.append(f"{fmt(x)},{fmt(p)},{fmt(self.values[i, j])}")
        return "\n".join(lines) + "\n"

    def to_document(self) -> str:
        return dumps_document({"metadata": self.metadata, "grid": self.spec.as_dict(),
                               "values": self.flat()})

    def write(self, path, fmt_name: str = "csv") -> Path:
        path = Path(path)
        text = self.to_csv() if fmt_name == "csv" else self.to_document()
        path.write_text(text, encoding="utf-8")
        return path

    @classmethod
    def from_document(cls, text: str) -> DistributionGrid:
        doc = json.loads(text)
        g = doc["grid"]
        spec = GridSpec(g["x_min"], g["x_max"], g["p_min"], g["p_max"], g["x_steps"], g["p_steps"])
        return cls(spec=spec, values=np.array(doc["values"], dtype=float), metadata=doc["metadata"])

    @classmethod
    def from_csv(cls, text: str, metadata: dict | None = None) -> DistributionGrid:
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        data = np.array(rows, dtype=float)
        xs = np.unique(data[:, 0])
        ps = np.unique(data[:, 1])
        spec = GridSpec(xs[0], xs[-1], ps[0], ps[-1], xs.size, ps.size)
        return cls(spec=spec, values=data[:, 2], metadata=metadata or {})

    def argmax(self) -> tuple[float, float]:
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        xs, ps = self.spec.axes()
        return float(xs[i]), float(ps[j])
