"""Dimension bookkeeping for the decomposition-class strata ``C_{H,S}`` of C(p).

A stratum is fixed by a standard Levi ``H`` (subset ``J`` per simple
component), a sheet ``S`` of ``P∩H`` on ``N(p∩h)`` and the orbit dimension
``j`` on that sheet.  Sheet data are inputs; nothing here computes sheets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from . import rootsys
from .classifier import ParabolicSpec, Status, Verdict
from .modtables import ModalityValue
from .rootsys import InvalidTypeError


class StratumError(ValueError):
    pass


@dataclass(frozen=True)
class StratumDatum:
    ambient: ParabolicSpec
    levi: tuple[frozenset[int], ...]
    sheet_dim: int
    orbit_dim: int

    def __post_init__(self):
        levi = tuple(frozenset(J) for J in self.levi)
        if len(levi) != len(self.ambient.shape.components):
            raise StratumError("need one Levi subset per simple component")
        for t, J in zip(self.ambient.shape.components, levi):
            if not J <= frozenset(range(1, t.rank + 1)):
                raise StratumError(f"Levi subset {sorted(J)} out of range for {t}")
        object.__setattr__(self, "levi", levi)
        if not 0 <= self.orbit_dim <= self.sheet_dim <= self.dim_p_cap_h:
            raise StratumError(
                f"need 0 <= j ({self.orbit_dim}) <= dim S ({self.sheet_dim}) <= dim(p∩h) ({self.dim_p_cap_h})")

    @property
    def rank(self) -> int:
        return self.ambient.shape.rank

    @property
    def ssrank(self) -> int:
        return sum(len(J) for J in self.levi)

    @property
    def dim_p_cap_h(self) -> int:
        """``rank G + |Phi_J^+| + |Phi_{I∩J}^+|`` summed over components."""
        total = self.rank
        for t, I, J in zip(self.ambient.shape.components, self.ambient.levi_subsets, self.levi):
            total += rootsys.num_positive_roots_in(t, J) + rootsys.num_positive_roots_in(t, I & J)
        return total


def cprime_dim(d: StratumDatum) -> int:
    """Dimension of the slice ``C'_{H,S}`` before saturation by ``P``."""
    return (d.rank - d.ssrank) + d.dim_p_cap_h + (d.sheet_dim - d.orbit_dim)


def stratum_dim(d: StratumDatum) -> int:
    """Dimension of ``C_{H,S} = P · C'_{H,S}``."""
    return (d.rank - d.ssrank) + d.ambient.dim + (d.sheet_dim - d.orbit_dim)


def component_floor(spec: ParabolicSpec) -> int:
    """Every irreducible component of C(p) has at least this dimension."""
    return spec.dim + spec.shape.rank


def stratum_upper_bound(d: StratumDatum, modality: int) -> int:
    """Bound on ``dim C_{H,S}`` when ``dim S - j`` is at most ``modality``."""
    return (d.rank - d.ssrank) + d.ambient.dim + modality


def is_component_candidate(d: StratumDatum) -> bool:
    """Strata below the floor can never close up to a component."""
    return stratum_dim(d) >= component_floor(d.ambient)


def torus_stratum(spec: ParabolicSpec) -> StratumDatum:
    """``H = T``, ``S = {0}``, ``j = 0``: the regular semisimple stratum."""
    return StratumDatum(spec, tuple(frozenset() for _ in spec.shape.components), 0, 0)


@dataclass(frozen=True)
class ReducibilityEvidence:
    datum_levi: tuple[frozenset[int], ...]
    ssrank: int
    modality: ModalityValue
    stratum_dim_lower: int
    floor: int


def reducibility_evidence(verdict: Verdict, spec: ParabolicSpec | None = None) -> ReducibilityEvidence:
    """Turn a reducible verdict's witness into a stratum at or above the floor.

    A sheet with ``dim S - j`` equal to the witness modality (or its lower
    bound) yields a stratum of dimension at least ``floor - ssrank + mod``.
    """
    if verdict.status is not Status.REDUCIBLE or verdict.witness is None:
        raise StratumError("evidence needs a reducible verdict with a witness")
    spec = spec or ParabolicSpec(verdict.shape)
    w = verdict.witness
    levi = tuple(w.levi.subset if t == w.component else frozenset() for t in spec.shape.components)
    ss = len(w.levi.subset)
    floor = component_floor(spec)
    return ReducibilityEvidence(levi, ss, w.modality, floor - ss + w.modality.value, floor)


# ---------------------------------------------------------------------------
# Stratum description files
# ---------------------------------------------------------------------------

def _subsets(spec_item, shape, default) -> tuple[frozenset[int], ...]:
    comps = shape.components
    if spec_item is None:
        return tuple(default(t) for t in comps)
    if spec_item == "all":
        return tuple(frozenset(range(1, t.rank + 1)) for t in comps)
    if spec_item == "borel":
        return tuple(frozenset() for _ in comps)
    items = list(spec_item)
    if len(comps) == 1 and all(isinstance(i, int) for i in items):
        items = [items]
    if len(items) != len(comps):
        raise StratumError(f"expected {len(comps)} subsets, got {len(items)}")
    return tuple(frozenset(range(1, t.rank + 1)) if s == "all" else frozenset(int(i) for i in s)
                 for t, s in zip(comps, items))


def load_strata(path: str | Path) -> tuple[ParabolicSpec, list[StratumDatum]]:
    """Read ``{"ambient": "A2+T1", "parabolic": [...], "strata": [...]}``.

    Each stratum has ``levi`` (subset, list of subsets, ``"all"`` or ``[]``),
    ``sheet_dim`` and ``orbit_dim``.  ``parabolic`` defaults to the Borel.
    """
    data = json.loads(Path(path).read_text())
    return parse_strata(data)


def parse_strata(data: Mapping) -> tuple[ParabolicSpec, list[StratumDatum]]:
    try:
        shape = rootsys.parse_shape(data["ambient"])
        spec = ParabolicSpec(shape, _subsets(data.get("parabolic"), shape, lambda t: frozenset()))
        out = []
        for i, s in enumerate(data.get("strata", [])):
            levi = _subsets(s.get("levi", []), shape, lambda t: frozenset())
            out.append(StratumDatum(spec, levi, int(s["sheet_dim"]), int(s["orbit_dim"])))
    except (KeyError, TypeError, InvalidTypeError) as exc:
        raise StratumError(f"malformed stratum description: {exc}") from exc
    return spec, out


def evaluate(data: Iterable[StratumDatum]) -> list[dict]:
    rows = []
    for d in data:
        rows.append({
            "levi": [sorted(J) for J in d.levi],
            "ssrank": d.ssrank,
            "dim_p_cap_h": d.dim_p_cap_h,
            "sheet_dim": d.sheet_dim,
            "orbit_dim": d.orbit_dim,
            "cprime_dim": cprime_dim(d),
            "stratum_dim": stratum_dim(d),
            "floor": component_floor(d.ambient),
            "component_candidate": is_component_candidate(d),
        })
    return rows
