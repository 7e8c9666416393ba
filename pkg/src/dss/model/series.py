"""Ragged time-value series for the simulation profile."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ProfileViolation, ShapeError


@dataclass(frozen=True)
class RaggedSeries:
    """One simulation output: (t, value) pairs for a run and a metric.

    Timestamps must be strictly increasing; series lengths are free to
    differ between runs and metrics, which is why the simulation profile
    never materializes a dense tensor.
    """

    run: int
    metric: str
    points: np.ndarray  # (n, 2) float64, column 0 = t [s], column 1 = value
    unit: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype="f8")
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ShapeError("points must be an (n, 2) array of (t, value) pairs")
        if not isinstance(self.run, int) or self.run < 0:
            raise ProfileViolation("run index must be a nonnegative integer")
        if not self.metric:
            raise ProfileViolation("metric name must be non-empty")
        if len(pts) > 1 and np.any(np.diff(pts[:, 0]) <= 0):
            raise ProfileViolation(
                f"run {self.run} metric {self.metric!r}: t must be strictly increasing")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def t(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def values(self) -> np.ndarray:
        return self.points[:, 1]

    def __eq__(self, other):
        if not isinstance(other, RaggedSeries):
            return NotImplemented
        return (self.run == other.run and self.metric == other.metric
                and self.unit == other.unit
                and self.points.shape == other.points.shape
                and self.points.tobytes() == other.points.tobytes())
