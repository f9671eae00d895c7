"""Decision procedures for commuting varieties of Borel and parabolic subalgebras.

Every procedure checks an inequality ``mod(P cap H : N(p cap h)) ? bound(ssrank H)``
over standard Levi subgroups ``H`` given by subsets ``J`` of simple roots.
The modality of a Levi is additive over the connected components of ``J``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import rootsys
from .modtables import DEFAULT_TABLE, ModalityTable, ModalityValue
from .rootsys import InvalidTypeError, LeviClass, ReductiveShape, SimpleType

SCHEMA_VERSION = "commvar.verdict/1"
SWEEP_MAX_RANK = 20

CITE_MAIN = "irreducible iff mod(P∩H : N(p∩h)) < ssrank H for every Levi H ≠ T containing T"
CITE_DIM = "if irreducible then dim C(p) = dim p + rank G"
CITE_CLOSED = "C(b) irreducible iff every simple component is A_l (l<=15), B_l/C_l (l<=6), D_l (l<=7), G_2 or E_6"
CITE_NORMAL = "C(b) irreducible and normal iff mod(B∩H : u∩h) < ssrank H - 1 for every Levi H with ssrank H > 1"
CITE_NORMAL_CLOSED = "C(b) irreducible and normal iff every simple component is A_l (l<=14), B_l/C_l (l<=5) or D_l (l<=7)"
CITE_EQUI = "C(p) equidimensional iff mod(P∩H : N(p∩h)) <= ssrank H for every Levi H ≠ T"
CITE_PARA = "P <= Q implies C(q) = Q·C(p), so C(b) irreducible forces C(p) irreducible"
CITE_LEVI = "C(p) irreducible implies C(p∩h) irreducible for Levi H containing T"
CITE_CM = "normality for general P additionally assumes the commuting scheme of the Levi factor is Cohen-Macaulay"

FLAG_STANDARD_LEVI = "standard-Levi approximation"
FLAG_CONNECTED = "connected-subset reduction"
FLAG_CONDITIONAL_CM = "conditional on Cohen-Macaulay commuting scheme of the Levi factor"


class Property(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    NORMAL = "normal"
    EQUIDIMENSIONAL = "equidimensional"


class Status(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    NORMAL = "normal"
    NOT_NORMAL = "not normal"
    EQUIDIMENSIONAL = "equidimensional"
    NOT_EQUIDIMENSIONAL = "not equidimensional"
    UNKNOWN = "unknown"


_OUTCOMES = {
    Property.IRREDUCIBLE: (Status.IRREDUCIBLE, Status.REDUCIBLE),
    Property.NORMAL: (Status.NORMAL, Status.NOT_NORMAL),
    Property.EQUIDIMENSIONAL: (Status.EQUIDIMENSIONAL, Status.NOT_EQUIDIMENSIONAL),
}


def threshold(prop: Property, ssrank: int) -> int:
    """The property holds at ``J`` iff the modality is strictly below this."""
    if prop is Property.IRREDUCIBLE:
        return ssrank
    if prop is Property.EQUIDIMENSIONAL:
        return ssrank + 1
    return ssrank - 1 if ssrank > 1 else ssrank


_RELATIONS = {Property.IRREDUCIBLE: ("<", ">="), Property.EQUIDIMENSIONAL: ("<=", ">"),
              Property.NORMAL: ("<", ">=")}


class OracleConflictError(ValueError):
    """An oracle entry contradicts the modality table on a Borel sub-case."""


@dataclass(frozen=True)
class Witness:
    component: SimpleType
    levi: LeviClass
    modality: ModalityValue
    inequality: str
    relative: frozenset[int] = frozenset()

    def to_dict(self) -> dict:
        return {
            "component": str(self.component),
            "J": sorted(self.levi.subset),
            "levi_types": [str(t) for t in self.levi.component_types],
            "relative": sorted(self.relative),
            "modality": self.modality.to_dict(),
            "inequality": self.inequality,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> Witness:
        t = rootsys.parse_type(d["component"])
        return cls(t, rootsys.levi_class(t, d["J"]), ModalityValue.from_dict(d["modality"]),
                   d["inequality"], frozenset(d.get("relative", ())))


@dataclass(frozen=True)
class Verdict:
    """Outcome of one decision procedure.

    ``witness`` is the canonical violating Levi when the property fails, or
    the canonical undecided Levi when the status is unknown.
    """

    prop: Property
    status: Status
    shape: ReductiveShape
    witness: Witness | None = None
    dimension: int | None = None
    citations: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def holds(self) -> bool | None:
        good, bad = _OUTCOMES[self.prop]
        return {good: True, bad: False}.get(self.status)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "property": self.prop.value,
            "shape": str(self.shape),
            "status": self.status.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "dimension": self.dimension,
            "citations": list(self.citations),
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> Verdict:
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported verdict schema {d.get('schema')!r}")
        return cls(Property(d["property"]), Status(d["status"]), rootsys.parse_shape(d["shape"]),
                   Witness.from_dict(d["witness"]) if d.get("witness") else None,
                   d.get("dimension"), tuple(d.get("citations", ())), tuple(d.get("flags", ())))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Subset sweep engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Outcome:
    holds: bool | None
    subset: frozenset[int] | None = None
    value: ModalityValue | None = None


def _bits(subset: Iterable[int]) -> int:
    return sum(1 << (i - 1) for i in subset)


def _lex_least(masks: np.ndarray, rank: int) -> int:
    # For equal-size sets, the sorted-tuple lex order puts first the set owning
    # the lowest differing bit, i.e. the largest bit-reversed mask.
    rev = np.zeros_like(masks)
    for b in range(rank):
        rev |= ((masks >> b) & 1) << (rank - 1 - b)
    return int(masks[int(np.argmax(rev))])


def _sweep_exhaustive(t: SimpleType, values: Mapping[frozenset[int], ModalityValue],
                      prop: Property) -> _Outcome:
    """Evaluate the inequality at every nonempty subset of simple roots."""
    r = t.rank
    masks = np.arange(1 << r, dtype=np.int64)
    known = np.zeros(1 << r, dtype=np.int64)
    n_bound = np.zeros(1 << r, dtype=np.int32)
    n_unknown = np.zeros(1 << r, dtype=np.int32)
    for comp, v in values.items():
        cm = _bits(comp)
        closure = cm | _bits(rootsys.neighbours(t, comp))
        is_comp = (masks & closure) == cm
        if v.kind.value == "unknown":
            n_unknown += is_comp
        else:
            known += is_comp * v.value
            if not v.is_exact:
                n_bound += is_comp
    size = np.zeros(1 << r, dtype=np.int64)
    for b in range(r):
        size += (masks >> b) & 1
    if prop is Property.IRREDUCIBLE:
        bound = size
    elif prop is Property.EQUIDIMENSIONAL:
        bound = size + 1
    else:
        bound = np.where(size > 1, size - 1, size)
    nonempty = size > 0
    determined = n_unknown == 0
    bad = nonempty & determined & (known >= bound)
    good = nonempty & determined & (n_bound == 0) & (known < bound)
    undecided = nonempty & ~bad & ~good

    def canonical(sel: np.ndarray) -> frozenset[int]:
        cands = masks[sel]
        smin = size[sel].min()
        m = _lex_least(cands[size[sel] == smin], r)
        return frozenset(i + 1 for i in range(r) if m >> i & 1)

    if bad.any():
        J = canonical(bad)
        return _Outcome(False, J, _levi_value(t, J, values))
    if undecided.any():
        J = canonical(undecided)
        return _Outcome(None, J, _levi_value(t, J, values))
    return _Outcome(True)


def _levi_value(t, J, values) -> ModalityValue:
    total = ModalityValue.exact(0)
    for c in rootsys.connected_components(t, J):
        total = total + values[c]
    return total


def _sweep_connected(t: SimpleType, values: Iterable[tuple[frozenset[int], ModalityValue]],
                     prop: Property) -> _Outcome:
    """Same verdict and witness as the exhaustive sweep, over connected J only.

    A violating J with several components has a violating component of
    smaller size, and undecided subsets likewise reduce to a component, so
    the minimal witnesses are connected.  ``values`` must come in the order
    of :func:`rootsys.connected_subsets`; the scan stops at the first
    violation.
    """
    undecided = None
    for J, v in values:
        bound = threshold(prop, len(J))
        if v.at_least_as_large_as(bound):
            return _Outcome(False, J, v)
        if undecided is None and not v.certainly_below(bound):
            undecided = (J, v)
    if undecided:
        return _Outcome(None, *undecided)
    return _Outcome(True)


def _run_sweep(t: SimpleType, value_of: Callable[[frozenset[int]], ModalityValue],
               prop: Property, method: str) -> tuple[_Outcome, bool]:
    if method == "connected" or t.rank > SWEEP_MAX_RANK:
        pairs = ((C, value_of(C)) for C in rootsys.iter_connected_subsets(t))
        return _sweep_connected(t, pairs, prop), method != "connected"
    values = {C: value_of(C) for C in rootsys.connected_subsets(t)}
    return _sweep_exhaustive(t, values, prop), False


def _witness(t: SimpleType, prop: Property, out: _Outcome,
             relative: frozenset[int] = frozenset()) -> Witness:
    levi = rootsys.levi_class(t, out.subset)
    bound = threshold(prop, len(out.subset))
    ok, fail = _RELATIONS[prop]
    if out.holds is None:
        text = f"undecided: mod {out.value} vs bound {bound} (needs mod < {bound})"
    else:
        rhs = len(out.subset) - (1 if prop is Property.NORMAL and len(out.subset) > 1 else 0)
        lhs = "ssrank - 1" if prop is Property.NORMAL and len(out.subset) > 1 else "ssrank"
        text = f"mod {out.value} {fail} {lhs} = {rhs}"
    return Witness(t, levi, out.value, text, relative & levi.subset)


def _combine(prop: Property, shape: ReductiveShape, results: list[tuple[SimpleType, _Outcome, frozenset]],
             dimension: int | None, citations: Sequence[str], flags: Iterable[str]) -> Verdict:
    good, bad = _OUTCOMES[prop]
    failing = [(t, o, rel) for t, o, rel in results if o.holds is False]
    open_ = [(t, o, rel) for t, o, rel in results if o.holds is None]
    flags = tuple(dict.fromkeys(flags))
    if failing:
        t, o, rel = failing[0]
        return Verdict(prop, bad, shape, _witness(t, prop, o, rel), None, tuple(citations), flags)
    if open_:
        t, o, rel = open_[0]
        return Verdict(prop, Status.UNKNOWN, shape, _witness(t, prop, o, rel), None, tuple(citations), flags)
    return Verdict(prop, good, shape, None, dimension, tuple(citations), flags)


# ---------------------------------------------------------------------------
# Borel subalgebras
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _borel_component(t: SimpleType, prop: Property, method: str, table: ModalityTable) -> tuple[_Outcome, bool]:
    def value_of(C):
        return table.mod_borel(rootsys.component_type(t, C))
    return _run_sweep(t, value_of, prop, method)


def _as_shape(shape: ReductiveShape | SimpleType) -> ReductiveShape:
    return ReductiveShape((shape,), 0) if isinstance(shape, SimpleType) else shape


def _classify_borel(shape, prop: Property, table: ModalityTable, method: str,
                    citations: Sequence[str]) -> Verdict:
    shape = _as_shape(shape)
    if method not in ("sweep", "connected"):
        raise ValueError(f"unknown sweep method {method!r}")
    results, flags = [], []
    for t in shape.components:
        out, reduced = _borel_component(t, prop, method, table)
        results.append((t, out, frozenset()))
        if reduced:
            flags.append(FLAG_CONNECTED)
    d = rootsys.dims(shape)
    return _combine(prop, shape, results, d.dim_borel + d.rank, citations, flags)


def classify_borel_irreducible(shape: ReductiveShape | SimpleType, table: ModalityTable = DEFAULT_TABLE,
                               method: str = "sweep") -> Verdict:
    """Irreducibility of C(b) by sweeping every standard Levi of each component.

    ``method="sweep"`` enumerates all ``2**rank`` subsets (falling back to the
    connected-subset reduction above rank ``SWEEP_MAX_RANK``);
    ``method="connected"`` uses the reduction directly.
    """
    return _classify_borel(shape, Property.IRREDUCIBLE, table, method, (CITE_MAIN, CITE_DIM))


def classify_borel_equidimensional(shape: ReductiveShape | SimpleType, table: ModalityTable = DEFAULT_TABLE,
                                   method: str = "sweep") -> Verdict:
    return _classify_borel(shape, Property.EQUIDIMENSIONAL, table, method, (CITE_EQUI,))


def classify_borel_normal(shape: ReductiveShape | SimpleType, table: ModalityTable = DEFAULT_TABLE,
                          method: str = "sweep") -> Verdict:
    """Irreducible-and-normal test: ``mod < |J| - 1`` whenever ``|J| > 1``.

    Singletons ``J`` keep the irreducibility bound ``mod < 1``.
    """
    return _classify_borel(shape, Property.NORMAL, table, method, (CITE_NORMAL,))


_CLOSED_IRREDUCIBLE = {"A": 15, "B": 6, "C": 6, "D": 7}
_CLOSED_NORMAL = {"A": 14, "B": 5, "C": 5, "D": 7}


def _in_list(t: SimpleType, limits: Mapping[str, int], extra: Iterable[str]) -> bool:
    t = t.canonical()
    return str(t) in extra or (t.family in limits and t.rank <= limits[t.family])


def classify_borel_closed_form(shape: ReductiveShape | SimpleType) -> Verdict:
    """Irreducibility of C(b) from the finite list of admissible simple types."""
    shape = _as_shape(shape)
    for t in shape.components:
        if not _in_list(t, _CLOSED_IRREDUCIBLE, ("G2", "E6")):
            levi = rootsys.levi_class(t, range(1, t.rank + 1))
            w = Witness(t, levi, ModalityValue.unknown(), f"{t} not in the admissible list")
            return Verdict(Property.IRREDUCIBLE, Status.REDUCIBLE, shape, w, None, (CITE_CLOSED,))
    d = rootsys.dims(shape)
    return Verdict(Property.IRREDUCIBLE, Status.IRREDUCIBLE, shape, None, d.dim_borel + d.rank, (CITE_CLOSED,))


def classify_borel_normal_closed_form(shape: ReductiveShape | SimpleType) -> Verdict:
    shape = _as_shape(shape)
    for t in shape.components:
        if not _in_list(t, _CLOSED_NORMAL, ()):
            levi = rootsys.levi_class(t, range(1, t.rank + 1))
            w = Witness(t, levi, ModalityValue.unknown(), f"{t} not in the admissible list")
            return Verdict(Property.NORMAL, Status.NOT_NORMAL, shape, w, None, (CITE_NORMAL_CLOSED,))
    d = rootsys.dims(shape)
    return Verdict(Property.NORMAL, Status.NORMAL, shape, None, d.dim_borel + d.rank, (CITE_NORMAL_CLOSED,))


def classify_borel(shape, prop: Property | str = Property.IRREDUCIBLE, method: str = "sweep",
                   table: ModalityTable = DEFAULT_TABLE) -> Verdict:
    """Dispatch on property and method (``sweep``, ``connected`` or ``closed-form``)."""
    prop = Property(prop)
    if method == "closed-form":
        if prop is Property.IRREDUCIBLE:
            return classify_borel_closed_form(shape)
        if prop is Property.NORMAL:
            return classify_borel_normal_closed_form(shape)
        raise ValueError("no closed form for equidimensionality")
    fn = {Property.IRREDUCIBLE: classify_borel_irreducible, Property.NORMAL: classify_borel_normal,
          Property.EQUIDIMENSIONAL: classify_borel_equidimensional}[prop]
    return fn(shape, table=table, method=method)


# ---------------------------------------------------------------------------
# Parabolic subalgebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicSpec:
    """Parabolic given by a Levi subset ``I`` per simple component (empty = Borel)."""

    shape: ReductiveShape
    levi_subsets: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        subsets = tuple(frozenset(s) for s in self.levi_subsets) or \
            tuple(frozenset() for _ in self.shape.components)
        if len(subsets) != len(self.shape.components):
            raise InvalidTypeError("need one Levi subset per simple component")
        for t, s in zip(self.shape.components, subsets):
            bad = [i for i in s if not 1 <= i <= t.rank]
            if bad:
                raise InvalidTypeError(f"parabolic indices {sorted(bad)} out of range for {t}")
        object.__setattr__(self, "levi_subsets", subsets)

    @property
    def is_borel(self) -> bool:
        return not any(self.levi_subsets)

    @property
    def dim(self) -> int:
        """``rank + |Phi^+| + |Phi_I^+|``."""
        d = rootsys.dims(self.shape)
        return d.dim_borel + sum(rootsys.num_positive_roots_in(t, s)
                                 for t, s in zip(self.shape.components, self.levi_subsets))


def _parse_subset(spec, J: frozenset[int], rank: int, what: str) -> frozenset[int]:
    if spec == "all":
        return J if what == "relative" else frozenset(range(1, rank + 1))
    if isinstance(spec, Mapping) and "all_but" in spec:
        base = J if what == "relative" else frozenset(range(1, rank + 1))
        return base - frozenset(int(i) for i in spec["all_but"])
    return frozenset(int(i) for i in spec)


@dataclass
class ModalityOracle:
    """``mod(P∩H : N(p∩h))`` per (component type, Levi subset J, relative subset I∩J).

    Borel sub-cases (empty relative subset) always come from the modality
    table; a stored entry that disagrees with the table is rejected.
    """

    table: ModalityTable = DEFAULT_TABLE
    entries: dict[tuple[SimpleType, frozenset[int], frozenset[int]], tuple[ModalityValue, str]] = \
        field(default_factory=dict)

    def __post_init__(self):
        for (t, J, rel), (v, prov) in self.entries.items():
            if rel == J and v != ModalityValue.exact(0):
                raise OracleConflictError(
                    f"oracle entry {t} J={sorted(J)} with relative subset J gives {v}; "
                    f"a Levi has finitely many nilpotent orbits ({prov})")
            if not rel:
                expected = self.table.mod_borel_product(rootsys.levi_class(t, J).component_types)
                if expected.kind.value != "unknown" and expected != v:
                    raise OracleConflictError(
                        f"oracle entry {t} J={sorted(J)} gives {v} but the Borel table gives {expected} ({prov})")

    def lookup(self, t: SimpleType, levi: LeviClass | frozenset[int], relative: Iterable[int]) -> ModalityValue:
        J = levi.subset if isinstance(levi, LeviClass) else frozenset(levi)
        rel = frozenset(relative) & J
        hit = self.entries.get((t.canonical(), J, rel))
        if rel == J:
            # H acting on its own nilpotent cone has finitely many orbits
            return ModalityValue.exact(0)
        if not rel:
            tab = self.table.mod_borel_product(rootsys.levi_class(t, J).component_types)
            return hit[0] if hit and tab.kind.value == "unknown" else tab
        return hit[0] if hit else ModalityValue.unknown()

    @classmethod
    def from_file(cls, path: str | Path, table: ModalityTable = DEFAULT_TABLE) -> ModalityOracle:
        """JSON list of ``{type, J, relative, kind, value, provenance}``.

        ``J`` is a list of 1-based indices, ``"all"`` or ``{"all_but": [...]}``;
        ``relative`` likewise, with ``"all"`` meaning ``J`` itself.
        """
        data = json.loads(Path(path).read_text())
        if isinstance(data, Mapping):
            data = data.get("entries", [])
        entries = {}
        for i, item in enumerate(data):
            try:
                t = rootsys.parse_type(item["type"])
                J = _parse_subset(item["J"], frozenset(), t.rank, "J")
                rel = _parse_subset(item.get("relative", []), J, t.rank, "relative")
                v = ModalityValue.from_dict(item)
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"oracle entry {i}: {exc}") from exc
            if not J or not J <= frozenset(range(1, t.rank + 1)) or not rel <= J:
                raise ValueError(f"oracle entry {i}: bad subsets J={sorted(J)} relative={sorted(rel)}")
            prov = str(item.get("provenance") or "").strip()
            if not prov:
                raise ValueError(f"oracle entry {i} has no provenance")
            entries[(t, J, rel)] = (v, prov)
        return cls(table, entries)


def _classify_parabolic(spec: ParabolicSpec, oracle: ModalityOracle, prop: Property,
                        citations: list[str], method: str) -> Verdict:
    results, flags = [], []
    for t, I in zip(spec.shape.components, spec.levi_subsets):
        if prop is Property.IRREDUCIBLE:
            shortcut, reduced = _borel_component(t, prop, method, oracle.table)
            if shortcut.holds:
                results.append((t, shortcut, I))
                flags.extend([FLAG_CONNECTED] if reduced else [])
                continue
        out, reduced = _run_sweep(t, lambda C, t=t, I=I: oracle.lookup(t, C, I & C), prop, method)
        results.append((t, out, I))
        if reduced:
            flags.append(FLAG_CONNECTED)
        if I and out.holds is True:
            flags.append(FLAG_STANDARD_LEVI)
    return _combine(prop, spec.shape, results, spec.dim + spec.shape.rank, citations, flags)


def classify_parabolic_irreducible(spec: ParabolicSpec, oracle: ModalityOracle | None = None,
                                   method: str = "sweep") -> Verdict:
    """Irreducibility of C(p).

    A component whose Borel commuting variety is irreducible needs no further
    data.  Otherwise the Levi inequality is checked over standard Levi classes
    with relative parabolic ``I∩J``; an irreducible outcome obtained this way
    is flagged as a standard-Levi approximation.
    """
    oracle = oracle or ModalityOracle()
    return _classify_parabolic(spec, oracle, Property.IRREDUCIBLE, [CITE_MAIN, CITE_DIM, CITE_PARA], method)


def classify_parabolic_normal_conditional(spec: ParabolicSpec, oracle: ModalityOracle | None = None,
                                          method: str = "sweep") -> Verdict:
    """Sufficient condition for normality of C(p); never reports failure.

    Only a positive outcome is meaningful for ``P != B``: a violated bound
    leaves normality open and is reported as unknown.
    """
    oracle = oracle or ModalityOracle()
    v = _classify_parabolic(spec, oracle, Property.NORMAL, [CITE_NORMAL, CITE_CM], method)
    if spec.is_borel:
        return v
    flags = v.flags + (FLAG_CONDITIONAL_CM,)
    status = Status.UNKNOWN if v.status is Status.NOT_NORMAL else v.status
    return Verdict(v.prop, status, v.shape, v.witness, v.dimension, v.citations, flags)


# ---------------------------------------------------------------------------
# Self-consistency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityReport:
    shape: ReductiveShape
    ambient_status: Status
    checked: int
    violations: tuple[LeviClass, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def levi_monotonicity_check(shape: ReductiveShape | SimpleType, table: ModalityTable = DEFAULT_TABLE) -> MonotonicityReport:
    """Every standard Levi of an irreducible C(b) must give an irreducible C(b∩h)."""
    shape = _as_shape(shape)
    ambient = classify_borel_irreducible(shape, table)
    if ambient.status is not Status.IRREDUCIBLE:
        return MonotonicityReport(shape, ambient.status, 0, ())
    checked, bad = 0, []
    for t in shape.components:
        for levi in rootsys.levi_classes(t):
            checked += 1
            sub = classify_borel_irreducible(ReductiveShape(levi.component_types), table)
            if sub.status is not Status.IRREDUCIBLE:
                bad.append(levi)
    return MonotonicityReport(shape, ambient.status, checked, tuple(bad))


def normality_summary(shape: ReductiveShape | SimpleType, table: ModalityTable = DEFAULT_TABLE,
                      method: str = "sweep") -> tuple[str, Verdict, Verdict]:
    """Joint reading such as ``"irreducible, not normal"`` with both verdicts."""
    irr = classify_borel(shape, Property.IRREDUCIBLE, method, table)
    norm = classify_borel(shape, Property.NORMAL, method, table)
    if norm.status is Status.NORMAL:
        return "irreducible, normal", irr, norm
    if irr.status is Status.IRREDUCIBLE:
        tail = "not normal" if norm.status is Status.NOT_NORMAL else "normality unknown"
        return f"irreducible, {tail}", irr, norm
    if irr.status is Status.REDUCIBLE:
        return "reducible, not normal", irr, norm
    return "unknown", irr, norm
