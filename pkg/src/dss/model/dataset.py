"""The DssDataset tensor model and its core operations."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping

import numpy as np

from ..errors import (
    AxisError,
    NormError,
    ProfileViolation,
    ShapeError,
    UnsupportedFeatureError,
)
from .axes import AxisDef, CoordinateVec
from .profiles import DEFAULT_REGISTRY, DatasetTypeRegistry
from .selectors import SliceSelector
from .series import RaggedSeries

DOMAINS = ("delay", "frequency", "time", "none")


@dataclass(frozen=True)
class HardwareAttribute:
    """A stored hardware-component characterization (e.g. a frequency
    response sampled on a grid, or an AM-AM profile)."""

    name: str
    values: np.ndarray            # float64 or complex128
    grid: np.ndarray | None = None  # sample grid of the values, float64
    grid_unit: str = ""
    unit: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values)
        vals = vals.astype("c16" if np.iscomplexobj(vals) else "f8")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.grid is not None:
            grid = np.asarray(self.grid, dtype="f8").copy()
            if grid.shape != (vals.shape[0],):
                raise ShapeError(
                    f"attribute {self.name!r}: grid length {grid.shape} does not "
                    f"match values leading dimension {vals.shape[0]}")
            grid.setflags(write=False)
            object.__setattr__(self, "grid", grid)

    def __eq__(self, other):
        if not isinstance(other, HardwareAttribute):
            return NotImplemented
        same_grid = (self.grid is None) == (other.grid is None) and (
            self.grid is None or (self.grid.shape == other.grid.shape
                                  and self.grid.tobytes() == other.grid.tobytes()))
        return (self.name == other.name and self.unit == other.unit
                and self.grid_unit == other.grid_unit and same_grid
                and self.values.dtype == other.values.dtype
                and self.values.shape == other.values.shape
                and self.values.tobytes() == other.values.tobytes())


@dataclass(frozen=True)
class ChannelCoords:
    """Positions (meters) and optional unit-quaternion orientations for the
    entries of one axis."""

    positions: np.ndarray          # (N, 3) float64, meters
    orientations: np.ndarray | None = None  # (N, 4) float64, [w, x, y, z]

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype="f8").copy()
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise ShapeError(f"positions must be (N, 3), got {pos.shape}")
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        if self.orientations is not None:
            quat = np.asarray(self.orientations, dtype="f8").copy()
            if quat.ndim != 2 or quat.shape != (pos.shape[0], 4):
                raise ShapeError(
                    f"orientations must be ({pos.shape[0]}, 4), got {quat.shape}")
            norms = np.linalg.norm(quat, axis=1)
            if np.any(np.abs(norms - 1.0) > 1e-9):
                raise NormError("orientation quaternions must have unit norm "
                                "(tolerance 1e-9)")
            quat.setflags(write=False)
            object.__setattr__(self, "orientations", quat)

    def take(self, indices) -> "ChannelCoords":
        idx = np.asarray(indices, dtype=np.intp)
        quat = self.orientations[idx] if self.orientations is not None else None
        return ChannelCoords(self.positions[idx], quat)

    def __eq__(self, other):
        if not isinstance(other, ChannelCoords):
            return NotImplemented
        same_quat = (self.orientations is None) == (other.orientations is None) and (
            self.orientations is None
            or self.orientations.tobytes() == other.orientations.tobytes())
        return (self.positions.shape == other.positions.shape
                and self.positions.tobytes() == other.positions.tobytes()
                and same_quat)


@dataclass(frozen=True)
class DssDataset:
    """A typed tensor with named axes, units and embedded metadata.

    ``data`` is a dense complex128/float64 tensor in row-major axis order for
    the dense profiles, or None for the ragged simulation profile (whose
    content lives in ``series``). ``metadata_bundle`` holds verbatim
    description-file texts keyed by kind and id; they travel with the data
    through every save/open cycle so files stay self-describing.
    """

    dataset_type: str
    axes: tuple[AxisDef, ...]
    data: np.ndarray | None
    domain: str = "none"
    attrs: Mapping[str, Any] = field(default_factory=dict)
    metadata_bundle: Mapping[str, Mapping[str, str]] = field(default_factory=dict)
    channel_coords: Mapping[str, ChannelCoords] = field(default_factory=dict)
    series: tuple[RaggedSeries, ...] = ()
    hardware_attrs: Mapping[str, Mapping[str, HardwareAttribute]] = field(
        default_factory=dict)

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ProfileViolation(f"unknown domain {self.domain!r}")
        object.__setattr__(self, "axes", tuple(self.axes))
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ProfileViolation(f"duplicate axis names in {names}")
        if self.data is not None:
            data = np.asarray(self.data)
            if data.dtype not in (np.complex128, np.float64):
                data = data.astype("c16" if np.iscomplexobj(data) else "f8")
            expected = tuple(a.length for a in self.axes)
            if data.shape != expected:
                raise ShapeError(
                    f"data shape {data.shape} does not match axis lengths {expected}")
            data = data.copy() if data.base is not None else data
            data.setflags(write=False)
            object.__setattr__(self, "data", data)
        for axis_name in self.channel_coords:
            ax = self.axis(axis_name)
            n = self.channel_coords[axis_name].positions.shape[0]
            if n != ax.length:
                raise ShapeError(
                    f"channel coords for axis {axis_name!r} have {n} rows, "
                    f"axis length is {ax.length}")
        object.__setattr__(self, "series", tuple(self.series))
        object.__setattr__(self, "attrs", dict(self.attrs))
        object.__setattr__(self, "metadata_bundle",
                           {k: dict(v) for k, v in self.metadata_bundle.items()})
        object.__setattr__(self, "channel_coords", dict(self.channel_coords))
        object.__setattr__(self, "hardware_attrs",
                           {k: dict(v) for k, v in self.hardware_attrs.items()})

    # -- introspection ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.length for a in self.axes)

    def axis(self, name: str) -> AxisDef:
        for a in self.axes:
            if a.name == name:
                return a
        raise AxisError(f"no axis named {name!r}; axes are {[a.name for a in self.axes]}")

    def axis_index(self, name: str) -> int:
        for i, a in enumerate(self.axes):
            if a.name == name:
                return i
        raise AxisError(f"no axis named {name!r}; axes are {[a.name for a in self.axes]}")

    def axis_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes)

    def sample_axis_index(self) -> int:
        for i, a in enumerate(self.axes):
            if a.kind == "sample":
                return i
        raise AxisError("dataset has no sample axis")

    # -- derivation ---------------------------------------------------------

    def with_data(self, data: np.ndarray, *, domain: str | None = None,
                  axes: tuple[AxisDef, ...] | None = None,
                  attrs: Mapping[str, Any] | None = None) -> "DssDataset":
        return replace(self, data=data,
                       domain=self.domain if domain is None else domain,
                       axes=self.axes if axes is None else tuple(axes),
                       attrs=dict(self.attrs) if attrs is None else dict(attrs))

    def with_metadata(self, kind: str, doc_id: str, text: str) -> "DssDataset":
        bundle = {k: dict(v) for k, v in self.metadata_bundle.items()}
        bundle.setdefault(kind, {})[doc_id] = text
        return replace(self, metadata_bundle=bundle)

    def with_hardware_attr(self, component_id: str,
                           attr: HardwareAttribute) -> "DssDataset":
        hw = {k: dict(v) for k, v in self.hardware_attrs.items()}
        hw.setdefault(component_id, {})[attr.name] = attr
        return replace(self, hardware_attrs=hw)

    def __eq__(self, other):
        if not isinstance(other, DssDataset):
            return NotImplemented
        return datasets_equal(self, other)


def new_dataset(dataset_type: str, axes, domain: str = "none",
                attrs: Mapping[str, Any] | None = None,
                registry: DatasetTypeRegistry | None = None,
                series: tuple[RaggedSeries, ...] = (),
                metadata_bundle=None) -> DssDataset:
    """Create a zero-initialized dataset validated against its profile."""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    profile = registry.get(dataset_type)
    axes = tuple(axes)
    attrs = dict(attrs or {})
    missing = [a for a in profile.required_attrs if a not in attrs]
    if missing:
        raise ProfileViolation(
            f"dataset type {dataset_type!r} requires attrs {missing}")
    if profile.ragged:
        if axes:
            raise ProfileViolation(
                f"ragged dataset type {dataset_type!r} takes no dense axes")
        return DssDataset(dataset_type, (), None, domain, attrs,
                          series=tuple(series),
                          metadata_bundle=metadata_bundle or {})
    if series:
        raise UnsupportedFeatureError(
            f"dense dataset type {dataset_type!r} cannot hold ragged series")
    profile.check_axes(axes, dataset_type)
    dtype = "c16" if profile.value_domain == "complex" else "f8"
    data = np.zeros(tuple(a.length for a in axes), dtype=dtype)
    return DssDataset(dataset_type, axes, data, domain, attrs,
                      metadata_bundle=metadata_bundle or {})


def validate_profile(ds: DssDataset,
                     registry: DatasetTypeRegistry | None = None) -> None:
    """Re-check a dataset against its registered profile (raises on violation)."""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    profile = registry.get(ds.dataset_type)
    if profile.ragged:
        if ds.data is not None or ds.axes:
            raise ProfileViolation(
                f"{ds.dataset_type!r} datasets are ragged; no dense tensor allowed")
        return
    profile.check_axes(ds.axes, ds.dataset_type)
    if ds.data is None:
        raise ProfileViolation(f"{ds.dataset_type!r} dataset has no tensor data")
    want = np.complex128 if profile.value_domain == "complex" else np.float64
    if ds.data.dtype != want:
        raise ProfileViolation(
            f"{ds.dataset_type!r} requires {profile.value_domain} values, "
            f"got dtype {ds.data.dtype}")
    missing = [a for a in profile.required_attrs if a not in ds.attrs]
    if missing:
        raise ProfileViolation(
            f"dataset type {ds.dataset_type!r} requires attrs {missing}")


def slice_dataset(ds: DssDataset, sel: SliceSelector) -> DssDataset:
    """Apply a selector, returning a copy with selected axes reduced.

    Singleton selections keep the axis with length 1; coordinates and
    channel coords are sliced consistently.
    """
    if ds.data is None:
        raise UnsupportedFeatureError("ragged datasets cannot be sliced by axis")
    sel.check_axes(ds.axis_names())
    data = ds.data
    new_axes = []
    new_coords = {}
    for pos, axis in enumerate(ds.axes):
        idx = sel.indices_for(axis.name, axis.length)
        new_axes.append(axis.take(idx))
        if axis.name in ds.channel_coords:
            new_coords[axis.name] = ds.channel_coords[axis.name].take(idx)
        data = np.take(data, idx, axis=pos)
    return replace(ds, axes=tuple(new_axes), data=np.ascontiguousarray(data),
                   channel_coords=new_coords)


def attach_channel_coords(ds: DssDataset, axis: str, positions,
                          orientations=None) -> DssDataset:
    """Attach per-index positions (meters) and optional orientations to an axis."""
    ax = ds.axis(axis)
    coords = ChannelCoords(positions, orientations)
    if coords.positions.shape[0] != ax.length:
        raise ShapeError(
            f"axis {axis!r} has length {ax.length}, got "
            f"{coords.positions.shape[0]} position rows")
    merged = dict(ds.channel_coords)
    merged[axis] = coords
    return replace(ds, channel_coords=merged)


# -- equality ----------------------------------------------------------------

def normalize_attr(value) -> str:
    """Canonical string form used when comparing dataset attrs."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, bytes):
        return value.decode("utf-8")
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ",".join(normalize_attr(v) for v in value) + "]"
    return str(value)


def _attrs_equal(a: Mapping[str, Any], b: Mapping[str, Any]) -> bool:
    return ({k: normalize_attr(v) for k, v in a.items()}
            == {k: normalize_attr(v) for k, v in b.items()})


def datasets_equal(a: DssDataset, b: DssDataset) -> bool:
    """The storage equality relation: type, domain, axes (names, lengths,
    coordinates bitwise), attrs (string-normalized), data bitwise, plus
    ragged series, channel coords and hardware attributes."""
    if a.dataset_type != b.dataset_type or a.domain != b.domain:
        return False
    if len(a.axes) != len(b.axes):
        return False
    for ax_a, ax_b in zip(a.axes, b.axes):
        if (ax_a.name, ax_a.kind, ax_a.length) != (ax_b.name, ax_b.kind, ax_b.length):
            return False
        if (ax_a.coordinate is None) != (ax_b.coordinate is None):
            return False
        if ax_a.coordinate is not None and ax_a.coordinate != ax_b.coordinate:
            return False
    if not _attrs_equal(a.attrs, b.attrs):
        return False
    if (a.data is None) != (b.data is None):
        return False
    if a.data is not None:
        if a.data.dtype != b.data.dtype or a.data.shape != b.data.shape:
            return False
        if a.data.tobytes() != b.data.tobytes():
            return False
    if {k: dict(v) for k, v in a.metadata_bundle.items()} != \
       {k: dict(v) for k, v in b.metadata_bundle.items()}:
        return False
    if dict(a.channel_coords) != dict(b.channel_coords):
        return False
    if sorted(a.series, key=lambda s: (s.run, s.metric)) != \
       sorted(b.series, key=lambda s: (s.run, s.metric)):
        return False
    if {k: dict(v) for k, v in a.hardware_attrs.items()} != \
       {k: dict(v) for k, v in b.hardware_attrs.items()}:
        return False
    return True
