"""Modality of a Borel subgroup acting on its nilradical, with bound semantics.

Values are exact, lower bounds, or unknown.  The embedded table covers
A_1..A_17, B_2..B_8, C_3..C_8, D_4..D_8, G_2, F_4, E_6, E_7, E_8.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Iterable, Mapping

from .rootsys import InvalidTypeError, SimpleType, parse_type


class Kind(str, enum.Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ModalityValue:
    kind: Kind
    value: int | None = None

    def __post_init__(self):
        if self.kind is Kind.UNKNOWN:
            if self.value is not None:
                raise ValueError("unknown modality carries no value")
        elif self.value is None or self.value < 0:
            raise ValueError(f"{self.kind.value} modality needs a nonnegative value")

    @classmethod
    def exact(cls, v: int) -> ModalityValue:
        return cls(Kind.EXACT, v)

    @classmethod
    def at_least(cls, v: int) -> ModalityValue:
        return cls(Kind.LOWER_BOUND, v)

    @classmethod
    def unknown(cls) -> ModalityValue:
        return cls(Kind.UNKNOWN)

    @property
    def is_exact(self) -> bool:
        return self.kind is Kind.EXACT

    def __add__(self, other: ModalityValue) -> ModalityValue:
        if self.kind is Kind.UNKNOWN or other.kind is Kind.UNKNOWN:
            return UNKNOWN
        kind = Kind.EXACT if self.is_exact and other.is_exact else Kind.LOWER_BOUND
        return ModalityValue(kind, self.value + other.value)

    def at_least_as_large_as(self, bound: int) -> bool:
        """True when the true modality is certainly ``>= bound``."""
        return self.kind is not Kind.UNKNOWN and self.value >= bound

    def certainly_below(self, bound: int) -> bool:
        """True when the true modality is certainly ``< bound`` (needs an exact value)."""
        return self.is_exact and self.value < bound

    def __str__(self):
        if self.kind is Kind.UNKNOWN:
            return "?"
        return str(self.value) if self.is_exact else f">={self.value}"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "value": self.value}

    @classmethod
    def from_dict(cls, d: Mapping) -> ModalityValue:
        return cls(Kind(d["kind"]), d.get("value"))


ZERO = ModalityValue.exact(0)
UNKNOWN = ModalityValue.unknown()

_A = [0, 0, 0, 0, 1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 14]
_B = {2: 0, 3: 1, 4: 2, 5: 3, 6: 5, 7: 7, 8: 9}
_C = {3: 1, 4: 2, 5: 3, 6: 5, 7: 7, 8: 9}
_D = {4: 1, 5: 2, 6: 4, 7: 5, 8: 8}


def _tabulated_entries() -> dict[SimpleType, tuple[ModalityValue, str]]:
    e: dict[SimpleType, tuple[ModalityValue, str]] = {}
    for r, v in enumerate(_A, start=1):
        e[SimpleType("A", r)] = (ModalityValue.exact(v), f"tabulated mod(B:u), A_{r}")
    e[SimpleType("A", 16)] = (ModalityValue.at_least(16), "tabulated lower bound, A_16")
    e[SimpleType("A", 17)] = (ModalityValue.at_least(19), "tabulated lower bound, A_17")
    for fam, data in (("B", _B), ("C", _C), ("D", _D)):
        for r, v in data.items():
            e[SimpleType(fam, r)] = (ModalityValue.exact(v), f"tabulated mod(B:u), {fam}_{r}")
    for name, v in (("G2", 1), ("F4", 4), ("E6", 5), ("E7", 10)):
        e[parse_type(name)] = (ModalityValue.exact(v), f"tabulated mod(B:u), {name[0]}_{name[1]}")
    e[SimpleType("E", 8)] = (ModalityValue.at_least(20), "tabulated lower bound, E_8")
    return e


TABULATED = _tabulated_entries()


def _extrapolated(t: SimpleType) -> tuple[ModalityValue, str] | None:
    """Rank + 1 lower bound for classical types beyond the table range."""
    f, r = t.family, t.rank
    if (f == "A" and r >= 18) or (f in "BCD" and r >= 9):
        return ModalityValue.at_least(r + 1), f"extrapolated lower bound rank+1 for {t}"
    return None


class OverrideError(ValueError):
    """Malformed or provenance-less override entry."""


@dataclass(frozen=True, eq=False)
class ModalityTable:
    """Lookup of mod(B:u) per simple type.

    ``extrapolate`` turns beyond-table classical types into ``>= rank+1``
    instead of unknown.
    """

    entries: Mapping[SimpleType, tuple[ModalityValue, str]]
    extrapolate: bool = False

    def lookup(self, t: SimpleType) -> tuple[ModalityValue, str]:
        t = t.canonical()
        hit = self.entries.get(t)
        if hit is not None:
            return hit
        if self.extrapolate:
            ext = _extrapolated(t)
            if ext is not None:
                return ext
        return UNKNOWN, f"{t} beyond table range"

    def mod_borel(self, t: SimpleType) -> ModalityValue:
        return self.lookup(t)[0]

    def mod_borel_product(self, ts: Iterable[SimpleType]) -> ModalityValue:
        return reduce(lambda a, b: a + b, (self.mod_borel(t) for t in ts), ZERO)

    def provenance(self, t: SimpleType) -> str:
        return self.lookup(t)[1]

    def with_overrides(self, overrides: Mapping[SimpleType, tuple[ModalityValue, str]]) -> ModalityTable:
        merged = dict(self.entries)
        merged.update(overrides)
        return ModalityTable(merged, self.extrapolate)

    def rows(self, family: str | None = None) -> list[tuple[SimpleType, ModalityValue, str]]:
        keys = sorted(self.entries, key=lambda t: ("ABCDGFE".index(t.family), t.rank))
        return [(t, *self.entries[t]) for t in keys if family is None or t.family == family.upper()]


DEFAULT_TABLE = ModalityTable(TABULATED)


def load_overrides(path: str | Path) -> dict[SimpleType, tuple[ModalityValue, str]]:
    """Read override entries from JSON.

    The file holds a list (or ``{"entries": [...]}``) of objects with keys
    ``family``, ``rank``, ``kind``, ``value`` and a mandatory ``provenance``.
    """
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("entries", [])
    out = {}
    for i, item in enumerate(data):
        try:
            t = SimpleType(str(item["family"]).upper(), int(item["rank"])).canonical()
            mv = ModalityValue.from_dict(item)
        except (KeyError, TypeError, ValueError, InvalidTypeError) as exc:
            raise OverrideError(f"override entry {i}: {exc}") from exc
        prov = item.get("provenance")
        if not prov or not str(prov).strip():
            raise OverrideError(f"override entry {i} ({t}) has no provenance")
        out[t] = (mv, str(prov))
    return out


def mod_borel(t: SimpleType) -> ModalityValue:
    return DEFAULT_TABLE.mod_borel(t)


def mod_borel_product(ts: Iterable[SimpleType]) -> ModalityValue:
    return DEFAULT_TABLE.mod_borel_product(ts)
