"""Typed documents for the five description-file kinds.

A parsed document keeps its unknown keys (reported as warnings, never
dropped: the standard is extensible) and remembers the source file when it
was loaded from a registry directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

DOC_KINDS = ("testbed", "data_source", "hardware_component", "environment",
             "experiment")

COMPONENT_KINDS = ("antenna", "cable", "amplifier", "filter", "microphone",
                   "sensor", "other")

MEDIA_KINDS = ("photo", "video", "scan")


@dataclass(eq=True)
class AttributeRef:
    """A named hardware characterization: inline data or a reference into a
    DSS dataset file (``file.dss.h5:/hardware_attributes/<id>/<name>``)."""

    name: str
    data_ref: str | None = None
    data: list | None = None
    axis_units: list[str] = field(default_factory=list)


@dataclass(eq=True)
class HardwareComponentDesc:
    id: str
    kind: str = "hardware_component"          # document kind, fixed
    component_kind: str = "other"             # antenna | cable | amplifier | ...
    name: str = ""
    ports: int | None = 1
    attributes: list[AttributeRef] = field(default_factory=list)
    unknown_keys: list[str] = field(default_factory=list)
    source: str | None = None


@dataclass(eq=True)
class DataSourceDesc:
    id: str
    kind: str = "data_source"
    name: str = ""
    source_type: str = ""
    num_channels: int | None = None
    parameters: dict[str, tuple[Any, str | None]] = field(default_factory=dict)
    unknown_keys: list[str] = field(default_factory=list)
    source: str | None = None


@dataclass(eq=True)
class ChannelLocationsRef:
    file: str
    loc_unit: str = "m"


@dataclass(eq=True)
class DataChainDesc:
    label: str
    data_source: str | DataSourceDesc | None = None
    hardware_components: list[str | HardwareComponentDesc] = field(default_factory=list)
    data_source_channel: str = "0"
    num_data_source_chains: int | None = None
    channel_locations: ChannelLocationsRef | None = None
    channel_orientations: ChannelLocationsRef | None = None

    def data_source_id(self) -> str | None:
        if self.data_source is None:
            return None
        if isinstance(self.data_source, DataSourceDesc):
            return self.data_source.id
        return self.data_source

    def component_ids(self) -> list[str]:
        return [c.id if isinstance(c, HardwareComponentDesc) else c
                for c in self.hardware_components]


@dataclass(eq=True)
class TestbedDesc:
    id: str
    kind: str = "testbed"
    name: str = ""
    description: str = ""
    url: str | None = None
    level: str | None = None
    data_chains: list[DataChainDesc] = field(default_factory=list)
    unknown_keys: list[str] = field(default_factory=list)
    source: str | None = None


@dataclass(eq=True)
class EnvironmentDesc:
    id: str
    kind: str = "environment"
    properties: dict[str, tuple[Any, str | None]] = field(default_factory=dict)
    file_refs: list[tuple[str, str]] = field(default_factory=list)  # (role, path)
    unknown_keys: list[str] = field(default_factory=list)
    source: str | None = None


@dataclass(eq=True)
class MeasurementDesc:
    id: str
    dataset: str = ""
    dataset_type: str = ""
    parameters: dict[str, Any] = field(default_factory=dict)


@dataclass(eq=True)
class ExperimentDesc:
    id: str
    kind: str = "experiment"
    name: str = ""
    testbeds: list[str] = field(default_factory=list)
    environment: str | None = None
    measurements: list[MeasurementDesc] = field(default_factory=list)
    tx_rx_mapping: str | list[tuple[int, int]] = "full"
    tx_channels: str | None = None   # channel selector over the expanded map
    rx_channels: str | None = None
    variables: dict[str, tuple[Any, str | None]] = field(default_factory=dict)
    media: list[tuple[str, str]] = field(default_factory=list)  # (kind, path)
    sync_info: dict[str, Any] = field(default_factory=dict)
    unknown_keys: list[str] = field(default_factory=list)
    source: str | None = None


DescriptionDoc = (TestbedDesc | DataSourceDesc | HardwareComponentDesc
                  | EnvironmentDesc | ExperimentDesc)


@dataclass(eq=True)
class ChannelRecord:
    global_index: int
    chain_label: str
    chain_instance: int
    source_channel: int
    location: tuple[float, float, float] | None = None
    orientation: tuple[float, float, float, float] | None = None
    hardware_chain: tuple[str, ...] = ()


@dataclass(eq=True)
class ChannelMap:
    """Flattened enumeration of all physical channels of a testbed, densely
    indexed 0..N-1 in document order."""

    channels: list[ChannelRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.channels)

    def __getitem__(self, i: int) -> ChannelRecord:
        return self.channels[i]


@dataclass(eq=True)
class ResolvedExperiment:
    experiment: ExperimentDesc
    testbeds: dict[str, TestbedDesc]
    environment: EnvironmentDesc | None
    channel_map: ChannelMap                    # all testbeds concatenated
    channel_maps: dict[str, ChannelMap]        # per testbed id
    pairs: list[tuple[int, int]]               # normalized tx/rx mapping


class Registry:
    """Immutable-after-load set of description documents keyed by (kind, id)."""

    def __init__(self, base_dir: str | Path | None = None):
        self._docs: dict[tuple[str, str], Any] = {}
        self.base_dir = Path(base_dir) if base_dir is not None else None

    def add(self, doc) -> bool:
        """Add a document; returns False when (kind, id) is already taken."""
        key = (doc.kind, doc.id)
        if key in self._docs:
            return False
        self._docs[key] = doc
        return True

    def get(self, kind: str, doc_id: str):
        return self._docs.get((kind, doc_id))

    def documents(self):
        return list(self._docs.values())

    def of_kind(self, kind: str):
        return [d for (k, _), d in self._docs.items() if k == kind]

    def __len__(self) -> int:
        return len(self._docs)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._docs
