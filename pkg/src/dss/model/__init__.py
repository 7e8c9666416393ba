"""In-memory typed tensor model: axes, profiles, datasets, slicing."""

from .axes import AXIS_KINDS, COORD_SEMANTICS, AxisDef, CoordinateVec
from .dataset import (
    ChannelCoords,
    DssDataset,
    HardwareAttribute,
    attach_channel_coords,
    datasets_equal,
    new_dataset,
    normalize_attr,
    slice_dataset,
    validate_profile,
)
from .profiles import (
    BUILTIN_PROFILES,
    DEFAULT_REGISTRY,
    DatasetProfile,
    DatasetTypeRegistry,
    ProfileAxis,
    register_type,
)
from .selectors import AXIS_ALIASES, SliceSelector, canonical_axis, compose
from .series import RaggedSeries

__all__ = [
    "AXIS_ALIASES",
    "AXIS_KINDS",
    "BUILTIN_PROFILES",
    "COORD_SEMANTICS",
    "AxisDef",
    "ChannelCoords",
    "CoordinateVec",
    "DatasetProfile",
    "DatasetTypeRegistry",
    "DEFAULT_REGISTRY",
    "DssDataset",
    "HardwareAttribute",
    "ProfileAxis",
    "RaggedSeries",
    "SliceSelector",
    "attach_channel_coords",
    "canonical_axis",
    "compose",
    "datasets_equal",
    "new_dataset",
    "normalize_attr",
    "register_type",
    "slice_dataset",
    "validate_profile",
]
