"""Index/label selection over dataset axes.

Covers both the keyword style used by the analysis API,
``plot_cr(ds, tx=0, rx=[0, 1, 2, 3], t=0)``, and the CLI string grammar
``"tx=0,rx=0:4,t=0"`` (ranges are half-open; bracket lists optional).
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from ..errors import AxisError, DssIndexError, GrammarError

# Shorthand used by the analysis call style; canonical names are axis names.
AXIS_ALIASES = {
    "t": "time",
    "sp": "speaker",
    "mic": "microphone",
    "ch": "channel",
}

#: selection value: a single index, a tuple of indices, or None meaning "all"
Selection = int | tuple | None


def canonical_axis(name: str) -> str:
    return AXIS_ALIASES.get(name, name)


def _normalize(value) -> Selection:
    if value is None:
        return None
    if isinstance(value, (bool, float)):
        raise GrammarError(f"selection index must be an integer, got {value!r}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        items = [int(v) for v in value]
        if not items:
            raise GrammarError("empty index list")
        return tuple(items)
    raise GrammarError(f"unsupported selection {value!r}")


@dataclass(frozen=True)
class SliceSelector:
    """Per-axis selection, keyed by canonical axis name."""

    selections: Mapping[str, Selection]

    def __post_init__(self):
        norm = {canonical_axis(k): _normalize(v)
                for k, v in dict(self.selections).items()}
        object.__setattr__(self, "selections", MappingProxyType(norm))

    @classmethod
    def from_kwargs(cls, **kwargs) -> "SliceSelector":
        return cls({k: v for k, v in kwargs.items() if v is not None})

    @classmethod
    def parse(cls, text: str) -> "SliceSelector":
        """Parse the CLI grammar: ``axis=k``, ``axis=a:b``, ``axis=[i,j,k]``."""
        selections: dict[str, Selection] = {}
        for clause in _split_clauses(text):
            if "=" not in clause:
                raise GrammarError(f"expected axis=selection, got {clause!r}")
            axis, _, value = clause.partition("=")
            axis = axis.strip()
            if not axis:
                raise GrammarError(f"missing axis name in {clause!r}")
            selections[axis] = _parse_value(value.strip())
        if not selections:
            raise GrammarError("empty selector")
        return cls(selections)

    def indices_for(self, axis_name: str, length: int) -> np.ndarray:
        """Resolve this selector to concrete indices for one axis."""
        sel = self.selections.get(axis_name)
        if sel is None:
            return np.arange(length, dtype=np.intp)
        items = (sel,) if isinstance(sel, int) else sel
        for i in items:
            if i < 0 or i >= length:
                raise DssIndexError(
                    f"index {i} out of range for axis {axis_name!r} "
                    f"of length {length}")
        return np.asarray(items, dtype=np.intp)

    def check_axes(self, axis_names: Sequence[str]) -> None:
        for name in self.selections:
            if name not in axis_names:
                raise AxisError(f"no axis named {name!r}; axes are {list(axis_names)}")


def _split_clauses(text: str) -> list[str]:
    # split on commas that are not inside brackets
    clauses, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise GrammarError(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            clauses.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise GrammarError(f"unbalanced brackets in {text!r}")
    clauses.append("".join(cur))
    return [c.strip() for c in clauses if c.strip()]


def _parse_int(token: str, context: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise GrammarError(f"expected integer in {context!r}, got {token!r}") from None


def _parse_value(value: str) -> Selection:
    if not value:
        raise GrammarError("empty selection value")
    if value == "all":
        return None
    if value.startswith("[") and value.endswith("]"):
        inner = value[1:-1]
        return tuple(_parse_int(v.strip(), value) for v in inner.split(",") if v.strip())
    if ":" in value:
        lo_s, _, hi_s = value.partition(":")
        lo, hi = _parse_int(lo_s, value), _parse_int(hi_s, value)
        if lo >= hi:
            raise GrammarError(f"empty range {value!r} (need a < b)")
        return tuple(range(lo, hi))
    return _parse_int(value, value)


def compose(first: SliceSelector, second: SliceSelector,
            axis_lengths: Mapping[str, int]) -> SliceSelector:
    """Selector equivalent to applying ``first`` then ``second``.

    ``axis_lengths`` are the lengths of the original (pre-``first``) axes.
    """
    out: dict[str, Selection] = {}
    names = set(first.selections) | set(second.selections)
    for name in names:
        length = axis_lengths[name]
        base = first.indices_for(name, length)
        sub = second.indices_for(name, len(base))
        picked = base[sub]
        s2 = second.selections.get(name)
        s1 = first.selections.get(name)
        if isinstance(s2, int) or (s2 is None and isinstance(s1, int)):
            out[name] = int(picked[0])
        else:
            out[name] = tuple(int(i) for i in picked)
    return SliceSelector(out)
