"""Adjoint orbits of U(q) and B(q) on the nilradical (or Borel) of gl_n."""

from __future__ import annotations

import enum
import itertools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .. import modtables
from ..rootsys import SimpleType
from . import fq
from .budget import DEFAULT_BUDGET, check
from .fitting import FitReport, FitStatus, fit_degree
from .fq import Support

CHUNK = 1 << 16


class Group(str, enum.Enum):
    U = "U"
    B = "B"


def group_order(group: Group | str, n: int, q: int) -> int:
    u = q ** fq.support_dim(n, Support.NILRADICAL)
    return u if Group(group) is Group.U else (q - 1) ** n * u


def generators(group: Group | str, n: int, q: int) -> list[np.ndarray]:
    """Simple root elements ``I + E_(i,i+1)``, plus torus elements for ``B``.

    Over a prime field ``I + E`` alone generates each simple root subgroup.
    """
    gens = []
    for i in range(n - 1):
        g = np.eye(n, dtype=np.int64)
        g[i, i + 1] = 1
        gens.append(g)
    if Group(group) is Group.B and q > 2:
        z = fq.primitive_root(q)
        for i in range(n):
            g = np.eye(n, dtype=np.int64)
            g[i, i] = z
            gens.append(g)
    return gens


def _inverse(g: np.ndarray, q: int) -> np.ndarray:
    """Inverse of an upper triangular matrix mod ``q`` by back substitution."""
    n = g.shape[0]
    inv_t = fq.inverse_table(q)
    out = np.zeros_like(g)
    for j in range(n):
        out[j, j] = inv_t[g[j, j] % q]
        for i in range(j - 1, -1, -1):
            s = int(g[i, i + 1:j + 1] @ out[i + 1:j + 1, j])
            out[i, j] = (-s * inv_t[g[i, i] % q]) % q
    return out


def estimate_work(group: Group | str, n: int, q: int, space: Support | str = Support.NILRADICAL) -> int:
    return q ** fq.support_dim(n, space) * len(generators(group, n, q)) * max(1, 2 * n ** 3)


@dataclass(frozen=True)
class OrbitCensus:
    """Orbits listed by their lexicographically least element (as a code)."""

    group: Group
    n: int
    q: int
    space: Support
    representatives: tuple[int, ...]
    orbit_sizes: tuple[int, ...]

    def __post_init__(self):
        if sum(self.orbit_sizes) != self.q ** fq.support_dim(self.n, self.space):
            raise ValueError("orbit sizes do not partition the space")
        order = group_order(self.group, self.n, self.q)
        if any(order % s for s in self.orbit_sizes):
            raise ValueError("orbit size does not divide the group order")

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)

    def representative_matrices(self) -> np.ndarray:
        coeffs = fq.decode(np.array(self.representatives, dtype=np.int64), self.n, self.q, self.space)
        return fq.to_matrices(coeffs, self.n, self.space)

    def size_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.orbit_sizes:
            out[s] = out.get(s, 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        return {
            "group": self.group.value, "n": self.n, "q": self.q, "space": self.space.value,
            "orbit_count": self.orbit_count,
            "orbit_sizes": {str(k): v for k, v in self.size_multiset().items()},
            "representatives": list(self.representatives),
        }


def _conjugate_codes(g, ginv, n, q, space, lo, hi) -> np.ndarray:
    X = fq.to_matrices(fq.elements(n, q, space, lo, hi), n, space)
    Y = np.einsum("ij,ajk,kl->ail", g, X, ginv) % q
    return fq.encode(fq.from_matrices(Y, n, space), q)


def orbit_census(group: Group | str, n: int, q: int, space: Support | str = Support.NILRADICAL,
                 threads: int = 1, budget: int = DEFAULT_BUDGET) -> OrbitCensus:
    """Partition ``space(F_q)`` into orbits under conjugation.

    Each generator becomes a permutation of element codes; orbits are the
    connected components of the union of those permutation graphs.
    """
    fq.check_field(q)
    group, space = Group(group), Support(space)
    if space is Support.FULL:
        raise ValueError("orbit census runs on the borel or nilradical support")
    check(f"orbit_census({group.value}, n={n}, q={q})", estimate_work(group, n, q, space), budget)
    total = q ** fq.support_dim(n, space)
    src = np.arange(total, dtype=np.int64)
    gens = generators(group, n, q)
    tasks = [(g, lo, hi) for g in gens for lo in range(0, total, CHUNK) for hi in [min(lo + CHUNK, total)]]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        images = list(pool.map(lambda t: _conjugate_codes(t[0], _inverse(t[0], q), n, q, space, t[1], t[2]), tasks))
    if gens:
        dst = np.concatenate(images)
        rows = np.tile(src, len(gens))
    else:
        dst = rows = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(dst.size, dtype=np.int8), (rows, dst)), shape=(total, total))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    reps = np.full(ncomp, total, dtype=np.int64)
    np.minimum.at(reps, labels, src)
    sizes = np.bincount(labels, minlength=ncomp)
    order = np.argsort(reps)
    return OrbitCensus(group, n, q, space, tuple(int(r) for r in reps[order]),
                       tuple(int(s) for s in sizes[order]))


def orbit_census_bfs(group: Group | str, n: int, q: int, space: Support | str = Support.NILRADICAL) -> OrbitCensus:
    """Plain breadth-first reference implementation (small cases only)."""
    group, space = Group(group), Support(space)
    total = q ** fq.support_dim(n, space)
    gens = [(g, _inverse(g, q)) for g in generators(group, n, q)]
    seen = np.zeros(total, dtype=bool)
    reps, sizes = [], []
    for start in range(total):
        if seen[start]:
            continue
        seen[start] = True
        queue, size = deque([start]), 0
        while queue:
            code = queue.popleft()
            size += 1
            X = fq.to_matrices(fq.decode(np.array([code]), n, q, space), n, space)[0]
            for g, gi in gens:
                nxt = int(fq.encode(fq.from_matrices(((g @ X @ gi) % q)[None], n, space), q)[0])
                if not seen[nxt]:
                    seen[nxt] = True
                    queue.append(nxt)
        reps.append(start)
        sizes.append(size)
    return OrbitCensus(group, n, q, space, tuple(reps), tuple(sizes))


def group_elements(group: Group | str, n: int, q: int) -> np.ndarray:
    """Every element of ``U(q)`` or ``B(q)`` as an array ``(|G|, n, n)``."""
    upper = fq.positions(n, Support.NILRADICAL)
    diag_vals = [(1,)] * n if Group(group) is Group.U else [tuple(range(1, q))] * n
    out = []
    for diag in itertools.product(*diag_vals):
        for vals in itertools.product(range(q), repeat=len(upper)):
            g = np.diag(np.array(diag, dtype=np.int64))
            for (i, j), v in zip(upper, vals):
                g[i, j] = v
            out.append(g)
    return np.array(out, dtype=np.int64).reshape(-1, n, n)


def burnside_count(group: Group | str, n: int, q: int, space: Support | str = Support.NILRADICAL,
                   budget: int = DEFAULT_BUDGET) -> int:
    """Orbit count as the average number of fixed points over the group.

    ``Fix(g)`` is the kernel of ``X -> gX - Xg`` on the space.
    """
    space = Support(space)
    d = fq.support_dim(n, space)
    check(f"burnside_count({Group(group).value}, n={n}, q={q})",
          group_order(group, n, q) * d * d * n * n, budget)
    G = group_elements(group, n, q)
    ranks = fq.batched_rank(fq.ad_matrices(G, space, Support.FULL), q)
    total = sum(q ** int(d - r) for r in ranks)
    avg = Fraction(total, len(G))
    if avg.denominator != 1:
        raise ArithmeticError("Burnside average is not an integer")
    return int(avg)


@dataclass(frozen=True)
class EmpiricalModality:
    group: Group
    n: int
    value: modtables.ModalityValue
    fit: FitReport
    expected: modtables.ModalityValue
    agrees: bool | None

    def to_dict(self) -> dict:
        return {
            "group": self.group.value, "n": self.n, "modality": self.value.to_dict(),
            "fit": self.fit.to_dict(), "expected": self.expected.to_dict(), "agrees": self.agrees,
        }


def expected_degree(group: Group | str, n: int) -> modtables.ModalityValue:
    """mod(B:u) of ``A_(n-1)``, plus the semisimple rank for ``U``."""
    base = modtables.mod_borel(SimpleType("A", n - 1))
    if Group(group) is Group.U:
        base = base + modtables.ModalityValue.exact(n - 1)
    return base


def empirical_modality(group: Group | str, n: int, q_list, threads: int = 1,
                       budget: int = DEFAULT_BUDGET) -> EmpiricalModality:
    """Degree of the fitted orbit-count polynomial.

    Exact only when a held-out ``q`` validates the fit, a lower bound when the
    samples merely interpolate, and unknown when the fit is refuted.
    """
    group = Group(group)
    if n < 2:
        raise ValueError("n must be at least 2")
    samples = [(q, orbit_census(group, n, q, threads=threads, budget=budget).orbit_count) for q in q_list]
    fit = fit_degree(samples, max_degree=fq.support_dim(n, Support.NILRADICAL))
    if fit.status is FitStatus.CONFIRMED:
        value = modtables.ModalityValue.exact(fit.degree)
    elif fit.status is FitStatus.CONSISTENT:
        value = modtables.ModalityValue.at_least(fit.degree)
    else:
        value = modtables.UNKNOWN
    expected = expected_degree(group, n)
    agrees = (value.value == expected.value) if value.is_exact and expected.is_exact else None
    return EmpiricalModality(group, n, value, fit, expected, agrees)
