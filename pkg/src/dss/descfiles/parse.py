"""YAML parsing and typing of description files.

Input is YAML 1.1 text: anchors, aliases and merge keys (``<<``) are applied
before typing, so a testbed can pull in data-source and component stubs the
way the reference Techtile file does. Two top-level shapes are accepted:

* flat: the mapping itself is one document (``kind``/``id`` fields inside);
* wrapped: each top-level key is a document id and its value the body --
  this is the anchor-friendly shape, and it allows several documents per
  file.

Typing is lenient about *missing* fields (the validator reports those) but
strict about *present* fields of the wrong primitive type, which raise
FieldTypeError with a document pointer path.
"""

from __future__ import annotations

from typing import Any

import yaml

from ..errors import (
    DescriptionSyntaxError,
    DssRangeError,
    FieldTypeError,
    GrammarError,
    KindMismatchError,
)
from .types import (
    COMPONENT_KINDS,
    DOC_KINDS,
    AttributeRef,
    ChannelLocationsRef,
    DataChainDesc,
    DataSourceDesc,
    EnvironmentDesc,
    ExperimentDesc,
    HardwareComponentDesc,
    MeasurementDesc,
    TestbedDesc,
)

# Field names that mark a top-level mapping as a flat single document.
_FLAT_MARKERS = {
    "kind", "id", "data_chains", "measurements", "testbeds", "tx_rx_mapping",
    "source_type", "num_channels", "ports", "attributes", "properties",
    "file_refs", "sync_info",
}


def load_yaml(text: str):
    """Parse YAML 1.1 text; DescriptionSyntaxError carries line/column."""
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        problem = getattr(exc, "problem", None) or str(exc)
        if mark is not None:
            raise DescriptionSyntaxError(problem, line=mark.line + 1,
                                         column=mark.column + 1) from exc
        raise DescriptionSyntaxError(problem) from exc


def infer_kind(body: dict) -> str | None:
    """Document kind from the ``kind:`` field, else from the body shape."""
    k = body.get("kind")
    if isinstance(k, str):
        if k in DOC_KINDS:
            return k
        if k in COMPONENT_KINDS:
            return "hardware_component"
    if "data_chains" in body:
        return "testbed"
    if any(f in body for f in ("measurements", "testbeds", "tx_rx_mapping")):
        return "experiment"
    if any(f in body for f in ("source_type", "num_channels")):
        return "data_source"
    if any(f in body for f in ("ports", "attributes", "component_kind")):
        return "hardware_component"
    if any(f in body for f in ("properties", "file_refs")):
        return "environment"
    return None


def split_documents(data, default_kind: str | None = None):
    """Yield (doc_id, kind_or_None, body) for each document in parsed YAML."""
    if not isinstance(data, dict):
        raise KindMismatchError(
            f"top level must be a mapping, got {type(data).__name__}")
    if _FLAT_MARKERS & set(data.keys()):
        doc_id = data.get("id")
        yield (doc_id if isinstance(doc_id, str) else "",
               infer_kind(data) or default_kind, data)
        return
    for key, body in data.items():
        if not isinstance(body, dict):
            raise KindMismatchError(
                f"document {key!r}: body must be a mapping, "
                f"got {type(body).__name__}")
        doc_id = body.get("id")
        doc_id = doc_id if isinstance(doc_id, str) else str(key)
        yield doc_id, infer_kind(body) or default_kind, body


def parse_description(text: str, kind: str):
    """Parse one description document of the requested kind from text."""
    if kind not in DOC_KINDS:
        raise GrammarError(f"unknown document kind {kind!r}; one of {DOC_KINDS}")
    data = load_yaml(text)
    if data is None:
        raise DescriptionSyntaxError("empty document")
    matches = []
    for doc_id, inferred, body in split_documents(data, default_kind=None):
        if inferred == kind or inferred is None:
            matches.append((doc_id, body))
    if not matches:
        raise KindMismatchError(f"text contains no {kind} document")
    if len(matches) > 1:
        # ambiguous bodies (no recognizable shape) don't count if a typed one exists
        typed = [(i, b) for i, b in matches if infer_kind(b) == kind]
        if len(typed) == 1:
            matches = typed
        else:
            raise KindMismatchError(
                f"text contains {len(matches)} candidate {kind} documents")
    doc_id, body = matches[0]
    return type_document(doc_id, kind, body)


def parse_documents(text: str, default_kind: str | None = None,
                    source: str | None = None):
    """Parse every document in a file; returns list of (doc | exception)."""
    out = []
    data = load_yaml(text)
    if data is None:
        return out
    for doc_id, kind, body in split_documents(data, default_kind=default_kind):
        if kind is None:
            out.append(KindMismatchError(
                f"cannot infer document kind for {doc_id!r} "
                "(no kind: field, shape unrecognized)"))
            continue
        try:
            doc = type_document(doc_id, kind, body)
            doc.source = source
            out.append(doc)
        except FieldTypeError as exc:
            out.append(exc)
    return out


def type_document(doc_id: str, kind: str, body: dict):
    typers = {
        "testbed": _type_testbed,
        "data_source": _type_data_source,
        "hardware_component": _type_hardware_component,
        "environment": _type_environment,
        "experiment": _type_experiment,
    }
    return typers[kind](doc_id, body)


# --- helpers ----------------------------------------------------------------

def _want(value, types, path: str, what: str):
    if isinstance(value, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        raise FieldTypeError(f"expected {what}, got boolean", path=path)
    if not isinstance(value, types):
        raise FieldTypeError(
            f"expected {what}, got {type(value).__name__}", path=path)
    return value


def _opt_str(body: dict, key: str, path: str) -> str | None:
    if key not in body or body[key] is None:
        return None
    return _want(body[key], str, f"{path}{key}", "a string")


def _opt_int(body: dict, key: str, path: str) -> int | None:
    if key not in body or body[key] is None:
        return None
    return _want(body[key], int, f"{path}{key}", "an integer")


def _value_unit(raw, path: str):
    """Normalize ``{value, unit}`` / ``[value, unit]`` / bare scalar."""
    if isinstance(raw, dict):
        extra = set(raw) - {"value", "unit"}
        if extra:
            raise FieldTypeError(
                f"unexpected keys {sorted(extra)} in value/unit pair", path=path)
        unit = raw.get("unit")
        if unit is not None:
            unit = _want(unit, str, f"{path}.unit", "a string")
        return raw.get("value"), unit
    if isinstance(raw, list) and len(raw) == 2 and isinstance(raw[1], str):
        return raw[0], raw[1]
    return raw, None


def _value_unit_map(body: dict, key: str, path: str) -> dict:
    raw = body.get(key)
    if raw is None:
        return {}
    raw = _want(raw, dict, f"{path}{key}", "a mapping")
    return {str(name): _value_unit(v, f"{path}{key}.{name}")
            for name, v in raw.items()}


def _extras(body: dict, known: set[str]) -> dict:
    return {k: v for k, v in body.items() if k not in known}


# --- per-kind typers --------------------------------------------------------

def _type_data_source(doc_id: str, body: dict) -> DataSourceDesc:
    known = {"kind", "id", "name", "source_type", "num_channels", "parameters"}
    return DataSourceDesc(
        id=_opt_str(body, "id", "") or doc_id,
        name=_opt_str(body, "name", "") or "",
        source_type=_opt_str(body, "source_type", "") or "",
        num_channels=_opt_int(body, "num_channels", ""),
        parameters=_value_unit_map(body, "parameters", ""),
        unknown_keys=sorted(_extras(body, known)),
    )


def _type_attribute(raw, path: str) -> AttributeRef:
    raw = _want(raw, dict, path, "a mapping")
    name = _opt_str(raw, "name", f"{path}.") or ""
    data_ref = _opt_str(raw, "data_ref", f"{path}.")
    data = raw.get("data")
    if data is not None:
        data = _want(data, list, f"{path}.data", "an array")
    units = raw.get("axis_units", [])
    units = _want(units, list, f"{path}.axis_units", "a list of strings")
    units = [_want(u, str, f"{path}.axis_units[{i}]", "a string")
             for i, u in enumerate(units)]
    return AttributeRef(name=name, data_ref=data_ref, data=data, axis_units=units)


def _type_hardware_component(doc_id: str, body: dict) -> HardwareComponentDesc:
    known = {"kind", "id", "name", "ports", "attributes", "component_kind"}
    kind_field = body.get("kind")
    component_kind = "other"
    if isinstance(kind_field, str) and kind_field in COMPONENT_KINDS:
        component_kind = kind_field
    ck = _opt_str(body, "component_kind", "")
    if ck is not None:
        component_kind = ck
    attrs_raw = body.get("attributes", [])
    attrs_raw = _want(attrs_raw, list, "attributes", "a list")
    attributes = [_type_attribute(a, f"attributes[{i}]")
                  for i, a in enumerate(attrs_raw)]
    return HardwareComponentDesc(
        id=_opt_str(body, "id", "") or doc_id,
        component_kind=component_kind,
        name=_opt_str(body, "name", "") or "",
        ports=_opt_int(body, "ports", "") if "ports" in body else 1,
        attributes=attributes,
        unknown_keys=sorted(_extras(body, known)),
    )


def _type_locations(raw, path: str) -> ChannelLocationsRef:
    raw = _want(raw, dict, path, "a mapping with file/loc_unit")
    file = _opt_str(raw, "file", f"{path}.") or ""
    unit = _opt_str(raw, "loc_unit", f"{path}.") or "m"
    return ChannelLocationsRef(file=file, loc_unit=unit)


def _chain_field(entry: dict, chain: dict, channel_chain: dict, key: str):
    """Fig. 2 places chain attributes at either the chain or the entry level;
    accept both (channel_chain wins for its own keys)."""
    for scope in (channel_chain, chain, entry):
        if key in scope:
            return scope[key]
    return None


def _type_data_chain(raw, idx: int) -> DataChainDesc:
    path = f"data_chains[{idx}]"
    entry = _want(raw, dict, path, "a mapping")
    chain = entry.get("chain", {})
    chain = _want(chain, dict, f"{path}.chain", "a mapping")
    channel_chain = chain.get("channel_chain", {})
    channel_chain = _want(channel_chain, dict, f"{path}.channel_chain", "a mapping")

    label = _opt_str(entry, "label", f"{path}.") or ""

    ds_raw = _chain_field(entry, chain, channel_chain, "data_source")
    if ds_raw is None:
        data_source = None
    elif isinstance(ds_raw, str):
        data_source = ds_raw
    elif isinstance(ds_raw, dict):
        data_source = _type_data_source(ds_raw.get("id", ""), ds_raw)
    else:
        raise FieldTypeError("expected a reference id or inline data source",
                             path=f"{path}.data_source")

    hw_raw = _chain_field(entry, chain, channel_chain, "hardware_components") or []
    hw_raw = _want(hw_raw, list, f"{path}.hardware_components", "a list")
    components: list = []
    for i, item in enumerate(hw_raw):
        if isinstance(item, str):
            components.append(item)
        elif isinstance(item, dict):
            components.append(_type_hardware_component(item.get("id", ""), item))
        else:
            raise FieldTypeError(
                "expected a reference id or inline component",
                path=f"{path}.hardware_components[{i}]")

    sel_raw = _chain_field(entry, chain, channel_chain, "data_source_channel")
    if sel_raw is None:
        selector = "0"
    elif isinstance(sel_raw, int) and not isinstance(sel_raw, bool):
        selector = str(sel_raw)
    else:
        selector = _want(sel_raw, str, f"{path}.data_source_channel",
                         "a selector string")

    n_chains = _chain_field(entry, chain, channel_chain, "num_data_source_chains")
    if n_chains is not None:
        n_chains = _want(n_chains, int, f"{path}.num_data_source_chains",
                         "an integer")

    loc_raw = _chain_field(entry, chain, channel_chain, "channel_locations")
    locations = (_type_locations(loc_raw, f"{path}.channel_locations")
                 if loc_raw is not None else None)
    ori_raw = _chain_field(entry, chain, channel_chain, "channel_orientations")
    orientations = (_type_locations(ori_raw, f"{path}.channel_orientations")
                    if ori_raw is not None else None)

    return DataChainDesc(
        label=label,
        data_source=data_source,
        hardware_components=components,
        data_source_channel=selector,
        num_data_source_chains=n_chains,
        channel_locations=locations,
        channel_orientations=orientations,
    )


def _type_testbed(doc_id: str, body: dict) -> TestbedDesc:
    known = {"kind", "id", "name", "description", "url", "level", "data_chains"}
    chains_raw = body.get("data_chains", [])
    chains_raw = _want(chains_raw, list, "data_chains", "a list")
    chains = [_type_data_chain(c, i) for i, c in enumerate(chains_raw)]
    return TestbedDesc(
        id=_opt_str(body, "id", "") or doc_id,
        name=_opt_str(body, "name", "") or "",
        description=_opt_str(body, "description", "") or "",
        url=_opt_str(body, "url", ""),
        level=_opt_str(body, "level", ""),
        data_chains=chains,
        unknown_keys=sorted(_extras(body, known)),
    )


def _type_environment(doc_id: str, body: dict) -> EnvironmentDesc:
    known = {"kind", "id", "properties", "file_refs"}
    refs_raw = body.get("file_refs", [])
    refs_raw = _want(refs_raw, list, "file_refs", "a list")
    refs = []
    for i, item in enumerate(refs_raw):
        rpath = f"file_refs[{i}]"
        if isinstance(item, dict):
            role = _opt_str(item, "role", f"{rpath}.") or ""
            fpath = _opt_str(item, "path", f"{rpath}.") or ""
        elif isinstance(item, list) and len(item) == 2:
            role, fpath = (_want(item[0], str, rpath, "a role string"),
                           _want(item[1], str, rpath, "a path string"))
        else:
            raise FieldTypeError("expected {role, path}", path=rpath)
        refs.append((role, fpath))
    return EnvironmentDesc(
        id=_opt_str(body, "id", "") or doc_id,
        properties=_value_unit_map(body, "properties", ""),
        file_refs=refs,
        unknown_keys=sorted(_extras(body, known)),
    )


def _type_measurement(raw, idx: int) -> MeasurementDesc:
    path = f"measurements[{idx}]"
    raw = _want(raw, dict, path, "a mapping")
    params = raw.get("parameters", {})
    params = _want(params, dict, f"{path}.parameters", "a mapping")
    return MeasurementDesc(
        id=_opt_str(raw, "id", f"{path}.") or "",
        dataset=_opt_str(raw, "dataset", f"{path}.") or "",
        dataset_type=_opt_str(raw, "dataset_type", f"{path}.") or "",
        parameters=dict(params),
    )


def _type_experiment(doc_id: str, body: dict) -> ExperimentDesc:
    known = {"kind", "id", "name", "testbeds", "environment", "measurements",
             "tx_rx_mapping", "tx_channels", "rx_channels", "variables",
             "media", "sync_info"}
    testbeds_raw = body.get("testbeds", [])
    testbeds_raw = _want(testbeds_raw, list, "testbeds", "a list of ids")
    testbeds = [_want(t, str, f"testbeds[{i}]", "a testbed id")
                for i, t in enumerate(testbeds_raw)]
    meas_raw = body.get("measurements", [])
    meas_raw = _want(meas_raw, list, "measurements", "a list")
    measurements = [_type_measurement(m, i) for i, m in enumerate(meas_raw)]

    mapping_raw = body.get("tx_rx_mapping", "full")
    if isinstance(mapping_raw, str):
        if mapping_raw != "full":
            raise FieldTypeError(
                f"tx_rx_mapping must be \"full\" or a pair list, got {mapping_raw!r}",
                path="tx_rx_mapping")
        mapping: str | list = "full"
    elif isinstance(mapping_raw, list):
        mapping = []
        for i, pair in enumerate(mapping_raw):
            ppath = f"tx_rx_mapping[{i}]"
            if not (isinstance(pair, list) and len(pair) == 2):
                raise FieldTypeError("expected [tx_channel, rx_channel]", path=ppath)
            tx = _want(pair[0], int, f"{ppath}[0]", "an integer")
            rx = _want(pair[1], int, f"{ppath}[1]", "an integer")
            mapping.append((tx, rx))
    else:
        raise FieldTypeError("expected \"full\" or a pair list", path="tx_rx_mapping")

    media_raw = body.get("media", [])
    media_raw = _want(media_raw, list, "media", "a list")
    media = []
    for i, item in enumerate(media_raw):
        mpath = f"media[{i}]"
        if isinstance(item, dict):
            media.append((_opt_str(item, "kind", f"{mpath}.") or "",
                          _opt_str(item, "path", f"{mpath}.") or ""))
        elif isinstance(item, list) and len(item) == 2:
            media.append((str(item[0]), str(item[1])))
        else:
            raise FieldTypeError("expected {kind, path}", path=mpath)

    sync = body.get("sync_info", {})
    sync = _want(sync, dict, "sync_info", "a mapping")

    tx_sel = body.get("tx_channels")
    if tx_sel is not None and isinstance(tx_sel, int) and not isinstance(tx_sel, bool):
        tx_sel = str(tx_sel)
    rx_sel = body.get("rx_channels")
    if rx_sel is not None and isinstance(rx_sel, int) and not isinstance(rx_sel, bool):
        rx_sel = str(rx_sel)

    return ExperimentDesc(
        id=_opt_str(body, "id", "") or doc_id,
        name=_opt_str(body, "name", "") or "",
        testbeds=testbeds,
        environment=_opt_str(body, "environment", ""),
        measurements=measurements,
        tx_rx_mapping=mapping,
        tx_channels=_want(tx_sel, str, "tx_channels", "a selector string")
        if tx_sel is not None else None,
        rx_channels=_want(rx_sel, str, "rx_channels", "a selector string")
        if rx_sel is not None else None,
        variables=_value_unit_map(body, "variables", ""),
        media=media,
        sync_info=dict(sync),
        unknown_keys=sorted(_extras(body, known)),
    )


# --- channel selector ---------------------------------------------------------

def selector_indices(raw: str) -> list[int]:
    """Indices of a channel selector: ``"k"`` -> [k]; ``"a:b"`` -> [a..b-1].

    Ranges are half-open, so ``"0:100"`` selects exactly 100 channels.
    Grammar problems raise GrammarError; empty ranges raise DssRangeError.
    """
    if isinstance(raw, int) and not isinstance(raw, bool):
        raw = str(raw)
    if not isinstance(raw, str):
        raise GrammarError(f"selector must be a string, got {type(raw).__name__}")
    text = raw.strip()
    if ":" in text:
        lo_s, sep, hi_s = text.partition(":")
        if not (lo_s.strip().isdigit() and hi_s.strip().isdigit()):
            raise GrammarError(f"bad selector {raw!r}: expected \"a:b\"")
        lo, hi = int(lo_s), int(hi_s)
        if lo >= hi:
            raise DssRangeError(f"empty selector range {raw!r} (need a < b)")
        return list(range(lo, hi))
    if not text.isdigit():
        raise GrammarError(f"bad selector {raw!r}: expected \"k\" or \"a:b\"")
    return [int(text)]


def parse_channel_selector(raw: str, num_channels: int):
    """Parse and bound-check a channel selector against a data source."""
    from .types import ChannelSelector  # local: avoid import cycle at module load

    indices = selector_indices(raw)
    if indices and indices[-1] >= num_channels:
        raise DssRangeError(
            f"selector {raw!r} exceeds data source with {num_channels} channels")
    return ChannelSelector(raw=str(raw), indices=indices)
