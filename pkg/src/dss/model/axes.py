"""Named tensor axes and their coordinate vectors."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ..errors import ProfileViolation, ShapeError

AXIS_KINDS = (
    "tx", "rx", "time", "sample", "speaker", "microphone", "channel",
    "run", "metric", "custom",
)

COORD_SEMANTICS = (
    "delay_seconds", "frequency_hz_absolute", "time_seconds", "index",
    "position_m", "custom",
)

# Axis names become dimension names on disk (NetCDF identifiers).
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _readonly(values, dtype="f8") -> np.ndarray:
    arr = np.asarray(values, dtype=dtype)
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CoordinateVec:
    """Per-axis coordinate values with a unit and a semantics tag.

    Monotonicity is enforced on construction: delay and time coordinates
    must be nondecreasing, absolute frequency strictly increasing.
    """

    values: np.ndarray
    unit: str
    semantics: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "values", _readonly(self.values))
        if self.values.ndim != 1:
            raise ShapeError("coordinate values must be a 1-D vector")
        if self.semantics not in COORD_SEMANTICS:
            raise ProfileViolation(f"unknown coordinate semantics {self.semantics!r}")
        if len(self.values) > 1:
            diffs = np.diff(self.values)
            if self.semantics in ("delay_seconds", "time_seconds") and np.any(diffs < 0):
                raise ProfileViolation(
                    f"{self.semantics} coordinate must be nondecreasing")
            if self.semantics == "frequency_hz_absolute" and np.any(diffs <= 0):
                raise ProfileViolation(
                    "frequency_hz_absolute coordinate must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, CoordinateVec):
            return NotImplemented
        return (self.unit == other.unit and self.semantics == other.semantics
                and self.values.shape == other.values.shape
                and self.values.tobytes() == other.values.tobytes())

    def take(self, indices) -> "CoordinateVec":
        return CoordinateVec(self.values[np.asarray(indices, dtype=np.intp)],
                             self.unit, self.semantics)


@dataclass(frozen=True)
class AxisDef:
    """One named tensor axis: a kind, a length and an optional coordinate."""

    name: str
    kind: str
    length: int
    coordinate: CoordinateVec | None = field(default=None)

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ProfileViolation(f"invalid axis name {self.name!r}")
        if self.kind not in AXIS_KINDS:
            raise ProfileViolation(f"unknown axis kind {self.kind!r}")
        if not isinstance(self.length, int) or self.length < 1:
            raise ProfileViolation(f"axis {self.name!r} length must be >= 1")
        if self.coordinate is not None and len(self.coordinate) != self.length:
            raise ProfileViolation(
                f"axis {self.name!r}: coordinate length {len(self.coordinate)} "
                f"!= axis length {self.length}")

    def take(self, indices) -> "AxisDef":
        indices = np.asarray(indices, dtype=np.intp)
        coord = self.coordinate.take(indices) if self.coordinate is not None else None
        return AxisDef(self.name, self.kind, len(indices), coord)

    def with_coordinate(self, coord: CoordinateVec | None) -> "AxisDef":
        return AxisDef(self.name, self.kind, self.length, coord)
