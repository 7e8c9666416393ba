"""Dataset-type profiles: the registered tensor shape contracts.

Three profiles are built in and cannot be removed or overwritten:

``channel_sounding``
    complex tensor over (tx, rx, time, sample), canonical axis order fixed.
``acoustic``
    real tensor over (speaker, microphone, channel, sample).
``simulation``
    ragged per-run/per-metric time-value series, no dense tensor.

Users extend the standard by registering new profiles under new names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DuplicateTypeError, ProfileViolation, ReservedNameError, UnknownTypeError
from .axes import AXIS_KINDS, AxisDef


@dataclass(frozen=True)
class ProfileAxis:
    """Expected axis: a kind, and the axis name (defaults to the kind)."""

    kind: str
    name: str | None = None

    def __post_init__(self):
        if self.kind not in AXIS_KINDS:
            raise ProfileViolation(f"unknown axis kind {self.kind!r}")

    @property
    def expected_name(self) -> str:
        return self.name if self.name is not None else self.kind


@dataclass(frozen=True)
class DatasetProfile:
    axes: tuple[ProfileAxis, ...]
    value_domain: str = "complex"  # "complex" | "real"
    required_attrs: tuple[str, ...] = ()
    ragged: bool = False

    def __post_init__(self):
        if self.value_domain not in ("complex", "real"):
            raise ProfileViolation(f"bad value domain {self.value_domain!r}")

    def check_axes(self, axes: tuple[AxisDef, ...], dataset_type: str) -> None:
        expected = [(a.kind, a.expected_name) for a in self.axes]
        got = [(a.kind, a.name) for a in axes]
        if got != expected:
            raise ProfileViolation(
                f"dataset type {dataset_type!r} requires axes "
                f"{expected} in order, got {got}")


BUILTIN_PROFILES = {
    "channel_sounding": DatasetProfile(
        axes=(ProfileAxis("tx"), ProfileAxis("rx"), ProfileAxis("time"),
              ProfileAxis("sample")),
        value_domain="complex",
        required_attrs=("center_frequency", "bandwidth"),
    ),
    "acoustic": DatasetProfile(
        axes=(ProfileAxis("speaker"), ProfileAxis("microphone"),
              ProfileAxis("channel"), ProfileAxis("sample")),
        value_domain="real",
        required_attrs=("sampling_rate",),
    ),
    "simulation": DatasetProfile(axes=(), value_domain="real", ragged=True),
}


@dataclass(frozen=True)
class DatasetTypeRegistry:
    """Immutable name -> profile map; built-ins always present."""

    extensions: dict = field(default_factory=dict)

    def get(self, name: str) -> DatasetProfile:
        if name in BUILTIN_PROFILES:
            return BUILTIN_PROFILES[name]
        try:
            return self.extensions[name]
        except KeyError:
            raise UnknownTypeError(f"unknown dataset type {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in BUILTIN_PROFILES or name in self.extensions

    def names(self) -> tuple[str, ...]:
        return tuple(BUILTIN_PROFILES) + tuple(self.extensions)


DEFAULT_REGISTRY = DatasetTypeRegistry()


def register_type(registry: DatasetTypeRegistry, name: str,
                  profile: DatasetProfile) -> DatasetTypeRegistry:
    """Return a registry extended with a user profile under ``name``."""
    if name in BUILTIN_PROFILES:
        raise ReservedNameError(f"{name!r} is a built-in dataset type")
    if name in registry.extensions:
        raise DuplicateTypeError(f"dataset type {name!r} already registered")
    return DatasetTypeRegistry({**registry.extensions, name: profile})
