"""Root systems of simple types, dimension bookkeeping and Levi sub-diagrams.

Roots are integer coordinate vectors over the simple roots.  Simple roots are
numbered as in Bourbaki throughout:

    ======  ===========================================================
    type    diagram (``=>`` points from long to short root)
    ======  ===========================================================
    A_n     1 - 2 - ... - n
    B_n     1 - 2 - ... - (n-1) => n            (alpha_n short)
    C_n     1 - 2 - ... - (n-1) <= n            (alpha_n long)
    D_n     1 - ... - (n-2) - (n-1), (n-2) - n
    E_n     1 - 3 - 4 - 5 - ... - n, 2 - 4
    F_4     1 - 2 => 3 - 4                       (alpha_3, alpha_4 short)
    G_2     1 <= 2  (triple bond)                (alpha_1 short)
    ======  ===========================================================

The Cartan matrix uses ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so the
pairing of a root ``beta = sum c_j alpha_j`` with ``alpha_i^vee`` is
``sum_j cartan[i][j] * c_j``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

FAMILIES = "ABCDEFG"
MAX_LEVI_RANK = 31


class InvalidTypeError(ValueError):
    """Raised for family/rank combinations that do not name a simple type."""


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        if f not in FAMILIES or not isinstance(r, int) or isinstance(r, bool):
            raise InvalidTypeError(f"not a simple type: {f!r}{r!r}")
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 3,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[f]
        if not ok:
            raise InvalidTypeError(f"no simple type {f}_{r}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    def canonical(self) -> SimpleType:
        """C_2 is reported as B_2 and D_3 as A_3."""
        if self.family == "C" and self.rank == 2:
            return SimpleType("B", 2)
        if self.family == "D" and self.rank == 3:
            return SimpleType("A", 3)
        return self

    @property
    def num_positive_roots(self) -> int:
        f, n = self.family, self.rank
        if f == "A":
            return n * (n + 1) // 2
        if f in "BC":
            return n * n
        if f == "D":
            return n * (n - 1)
        return {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}[str(self)]


@dataclass(frozen=True)
class ReductiveShape:
    """A torus of rank ``central_torus_rank`` times simple components."""

    components: tuple[SimpleType, ...] = ()
    central_torus_rank: int = 0

    def __post_init__(self):
        if self.central_torus_rank < 0:
            raise InvalidTypeError("central torus rank must be nonnegative")
        comps = tuple(sorted(t.canonical() for t in self.components))
        object.__setattr__(self, "components", comps)

    @property
    def ssrank(self) -> int:
        return sum(t.rank for t in self.components)

    @property
    def rank(self) -> int:
        return self.central_torus_rank + self.ssrank

    def __str__(self):
        text = ",".join(map(str, self.components))
        if self.central_torus_rank:
            text = f"{text}+T{self.central_torus_rank}" if text else f"T{self.central_torus_rank}"
        return text or "T0"


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")
_TORUS_RE = re.compile(r"^\s*[Tt]\s*_?\s*(\d+)\s*$")


def parse_type(text: str) -> SimpleType:
    """Parse ``"B6"`` or ``"E_8"`` into a canonical :class:`SimpleType`."""
    m = _TYPE_RE.match(text)
    if not m:
        raise InvalidTypeError(f"cannot parse simple type {text!r}")
    return SimpleType(m.group(1).upper(), int(m.group(2))).canonical()


def parse_shape(text: str) -> ReductiveShape:
    """Parse ``X<rank>[,X<rank>...][+T<k>]``, e.g. ``"A3,A3,D5"`` or ``"A2+T1"``.

    A bare ``"T5"`` is a torus of rank 5.
    """
    if not text.strip():
        raise InvalidTypeError("empty shape")
    comps, torus = [], 0
    for item in re.split(r"[,+]", text):
        m = _TORUS_RE.match(item)
        if m:
            torus += int(m.group(1))
        else:
            comps.append(parse_type(item))
    return ReductiveShape(tuple(comps), torus)


# ---------------------------------------------------------------------------
# Cartan matrix catalogue
# ---------------------------------------------------------------------------

def _diagram(t: SimpleType) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared root lengths and edges (0-based) in Bourbaki numbering."""
    f, n = t.family, t.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if f == "A":
        return [2] * n, chain
    if f == "B":
        return [4] * (n - 1) + [2], chain
    if f == "C":
        return [2] * (n - 1) + [4], chain
    if f == "D":
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if f == "E":
        return [2] * n, [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    if f == "F":
        return [4, 4, 2, 2], chain
    return [2, 6], chain  # G2


@lru_cache(maxsize=None)
def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    lengths, edges = _diagram(t)
    n = t.rank
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) // 2
    return tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(n)) for i in range(n))


def catalogue(max_rank: int = 8) -> list[SimpleType]:
    """All canonical simple types up to ``max_rank``."""
    out = []
    for r in range(1, max_rank + 1):
        for f in FAMILIES:
            try:
                t = SimpleType(f, r)
            except InvalidTypeError:
                continue
            if t.canonical() == t:
                out.append(t)
    return out


# ---------------------------------------------------------------------------
# Root systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootSystem:
    simple_type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    def roots_supported_in(self, subset: Iterable[int]) -> list[tuple[int, ...]]:
        """Positive roots whose support lies in ``subset`` (1-based indices)."""
        allowed = {i - 1 for i in subset}
        return [r for r in self.positive_roots
                if all(c == 0 or i in allowed for i, c in enumerate(r))]


def pairing(cartan, root, i: int) -> int:
    """``<root, alpha_i^vee>`` for 0-based simple index ``i``."""
    row = cartan[i]
    return sum(row[j] * c for j, c in enumerate(root) if c)


@lru_cache(maxsize=64)
def build_root_system(t: SimpleType) -> RootSystem:
    """Generate the positive roots by root strings, level by level in height.

    For a positive root ``beta`` and a simple root ``alpha_i`` the
    ``alpha_i``-string through ``beta`` runs from ``beta - p alpha_i`` to
    ``beta + q alpha_i`` with ``p - q = <beta, alpha_i^vee>``; every root of
    lower height is already known when ``beta`` is processed, so ``p`` is
    read off directly.
    """
    if not isinstance(t, SimpleType):
        raise InvalidTypeError(f"expected SimpleType, got {t!r}")
    n = t.rank
    cartan = cartan_matrix(t)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    level = list(simple)
    ordered = list(simple)
    while level:
        nxt = []
        for beta in level:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - pairing(cartan, beta, i)
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        nxt.sort(key=lambda r: tuple(-c for c in r))
        ordered.extend(nxt)
        level = nxt
    ordered.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    return RootSystem(t, cartan, tuple(ordered))


class Dims(NamedTuple):
    dim_g: int
    rank: int
    ssrank: int
    dim_borel: int
    dim_nilradical: int


def dims(t: SimpleType | ReductiveShape) -> Dims:
    if isinstance(t, SimpleType):
        t = ReductiveShape((t,), 0)
    npos = sum(c.num_positive_roots for c in t.components)
    return Dims(t.rank + 2 * npos, t.rank, t.ssrank, t.rank + npos, npos)


# ---------------------------------------------------------------------------
# Sub-diagram recognition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeviClass:
    """Standard Levi subgroup given by a subset of simple roots (1-based)."""

    ambient: SimpleType
    subset: frozenset[int]
    component_types: tuple[SimpleType, ...] = field(default=())
    components: tuple[frozenset[int], ...] = field(default=())

    @property
    def ssrank(self) -> int:
        return len(self.subset)

    def __str__(self):
        inside = ",".join(map(str, sorted(self.subset)))
        types = "x".join(map(str, self.component_types)) or "T"
        return f"{self.ambient}[{inside}]={types}"


def _adjacency(t: SimpleType) -> list[list[int]]:
    c = cartan_matrix(t)
    return [[j for j in range(t.rank) if j != i and c[i][j]] for i in range(t.rank)]


def connected_components(t: SimpleType, subset: Iterable[int]) -> list[frozenset[int]]:
    """Connected components (1-based) of the sub-diagram induced by ``subset``."""
    if t.family == "A":
        # runs of consecutive indices
        runs, cur = [], []
        for i in sorted(set(subset)):
            if cur and i != cur[-1] + 1:
                runs.append(frozenset(cur))
                cur = []
            cur.append(i)
        if cur:
            runs.append(frozenset(cur))
        return runs
    adj = _adjacency(t)
    todo = {i - 1 for i in subset}
    out = []
    while todo:
        start = min(todo)
        comp = {start}
        queue = deque([start])
        todo.discard(start)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w in todo:
                    todo.discard(w)
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(i + 1 for i in comp))
    out.sort(key=min)
    return out


def _induced(cartan, nodes: list[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(cartan[i][j] for j in nodes) for i in nodes)


def _invariants(mat) -> tuple:
    k = len(mat)
    bonds = sorted(mat[i][j] * mat[j][i] for i in range(k) for j in range(i + 1, k) if mat[i][j])
    degrees = sorted(sum(1 for j in range(k) if j != i and mat[i][j]) for i in range(k))
    return k, tuple(bonds), tuple(degrees)


def find_isomorphism(a, b) -> tuple[int, ...] | None:
    """A node permutation ``perm`` with ``a[i][j] == b[perm[i]][perm[j]]``.

    Complete backtracking search; prunes as soon as a partial assignment
    disagrees.  Returns ``None`` when the matrices are not permutation
    equivalent.
    """
    k = len(a)
    if len(b) != k:
        return None
    perm = [-1] * k
    used = [False] * k

    def extend(i: int) -> bool:
        if i == k:
            return True
        for cand in range(k):
            if used[cand] or a[i][i] != b[cand][cand]:
                continue
            if all(a[i][j] == b[cand][perm[j]] and a[j][i] == b[perm[j]][cand] for j in range(i)):
                perm[i] = cand
                used[cand] = True
                if extend(i + 1):
                    return True
                used[cand] = False
        perm[i] = -1
        return False

    return tuple(perm) if extend(0) else None


def _candidates(k: int) -> list[SimpleType]:
    return [t for t in catalogue(k) if t.rank == k]


@lru_cache(maxsize=None)
def _catalogue_invariants(t: SimpleType):
    return _invariants(cartan_matrix(t))


def recognize(mat) -> SimpleType:
    """Identify a connected Cartan matrix against the catalogue.

    Invariants narrow the candidates; a permutation match confirms, which is
    what separates B_n from C_n.
    """
    k = len(mat)
    inv = _invariants(mat)
    for t in _candidates(k):
        if _catalogue_invariants(t) != inv:
            continue
        if find_isomorphism(mat, cartan_matrix(t)) is not None:
            return t
    raise InvalidTypeError(f"connected Cartan matrix of size {k} matches no finite type")


def _classical_rule(t: SimpleType, comp: frozenset[int]) -> SimpleType:
    """Closed-form type of a connected sub-diagram of a classical diagram."""
    n, k = t.rank, len(comp)
    f = t.family
    if f == "A" or k == 1:
        return SimpleType("A", k)
    if f in "BC":
        return SimpleType(f, k).canonical() if n in comp else SimpleType("A", k)
    # D_n: a connected set reaching both n-1 and n contains the branch node
    if n - 1 in comp and n in comp:
        return SimpleType("D", k).canonical()
    return SimpleType("A", k)


@lru_cache(maxsize=1 << 16)
def component_type(t: SimpleType, comp: frozenset[int]) -> SimpleType:
    """Type of a connected sub-diagram given by 1-based node set ``comp``."""
    if t.family in "ABCD":
        return _classical_rule(t, comp)
    nodes = sorted(i - 1 for i in comp)
    return recognize(_induced(cartan_matrix(t), nodes))


def levi_class(t: SimpleType, subset: Iterable[int]) -> LeviClass:
    subset = frozenset(subset)
    bad = [i for i in subset if not 1 <= i <= t.rank]
    if bad:
        raise InvalidTypeError(f"indices {sorted(bad)} out of range for {t}")
    comps = connected_components(t, subset)
    types = [component_type(t, c) for c in comps]
    order = sorted(range(len(comps)), key=lambda i: (types[i], min(comps[i])))
    return LeviClass(t, subset, tuple(types[i] for i in order), tuple(comps[i] for i in order))


def levi_classes(rs: RootSystem | SimpleType) -> list[LeviClass]:
    """One :class:`LeviClass` per subset of simple roots, the empty set first."""
    t = rs.simple_type if isinstance(rs, RootSystem) else rs
    if t.rank > MAX_LEVI_RANK:
        raise InvalidTypeError(f"rank {t.rank} exceeds subset enumeration bound {MAX_LEVI_RANK}")
    nodes = range(1, t.rank + 1)
    return [levi_class(t, J) for size in range(t.rank + 1)
            for J in itertools.combinations(nodes, size)]


def iter_connected_subsets(t: SimpleType) -> Iterator[frozenset[int]]:
    """Lazy :func:`connected_subsets` (intervals are generated on demand for type A)."""
    n = t.rank
    if t.family == "A":
        return (frozenset(range(i, i + k)) for k in range(1, n + 1) for i in range(1, n - k + 2))
    return iter(connected_subsets(t))


def connected_subsets(t: SimpleType) -> list[frozenset[int]]:
    """All nonempty connected node sets, ordered by size then sorted indices."""
    n = t.rank
    if t.family == "A":
        return list(iter_connected_subsets(t))
    adj = _adjacency(t)
    seen: set[frozenset[int]] = set()
    frontier = [frozenset([i]) for i in range(n)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            for v in s:
                for w in adj[v]:
                    if w not in s:
                        bigger = s | {w}
                        if bigger not in seen:
                            seen.add(bigger)
                            nxt.append(bigger)
        frontier = nxt
    keyed = sorted((len(s), sorted(i + 1 for i in s)) for s in seen)
    return [frozenset(nodes) for _, nodes in keyed]


def neighbours(t: SimpleType, subset: Iterable[int]) -> frozenset[int]:
    """Nodes outside ``subset`` adjacent to it (1-based)."""
    subset = set(subset)
    if t.family == "A":
        return frozenset(i for s in subset for i in (s - 1, s + 1)
                         if 1 <= i <= t.rank and i not in subset)
    adj = _adjacency(t)
    return frozenset(w + 1 for v in subset for w in adj[v - 1] if w + 1 not in subset)


def num_positive_roots_in(t: SimpleType, subset: Iterable[int]) -> int:
    """``|Phi_J^+|`` via the component types of the induced sub-diagram."""
    return sum(component_type(t, c).num_positive_roots for c in connected_components(t, subset))
