"""Point counts of commuting varieties of gl_n supports over prime fields."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fq
from .budget import DEFAULT_BUDGET, check
from .fq import FqElement, Support

METHODS = ("centralizer-sum", "enumeration")
CHUNK = 1 << 14


@dataclass(frozen=True)
class PointCount:
    """Number of commuting pairs in ``support x support`` over ``F_q``.

    ``histogram`` maps centralizer dimension to the number of ``X`` with that
    dimension (empty for the enumeration method).
    """

    n: int
    q: int
    support: Support
    count: int
    method: str
    histogram: dict[int, int] = field(default_factory=dict)
    work: int = 0

    def __post_init__(self):
        if self.count < self.q ** fq.support_dim(self.n, self.support):
            raise ValueError("count below q^dim: impossible for a commuting variety")

    @property
    def min_centralizer_dim(self) -> int | None:
        return min(self.histogram) if self.histogram else None

    def to_dict(self) -> dict:
        return {
            "n": self.n, "q": self.q, "support": self.support.value, "count": self.count,
            "method": self.method,
            "centralizer_histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "min_centralizer_dim": self.min_centralizer_dim,
        }


def centralizer_dim(X: FqElement, support: Support | str | None = None) -> int:
    """Dimension of ``{Y in support : [X, Y] = 0}``."""
    support = Support(support or X.support)
    allowed = set(fq.positions(X.n, support))
    if any(X.entries[i][j] for i in range(X.n) for j in range(X.n) if (i, j) not in allowed):
        raise ValueError(f"X is not in the {support.value} support")
    ad = fq.ad_matrices(X.array[None], support)
    return fq.support_dim(X.n, support) - int(fq.batched_rank(ad, X.q)[0])


def centralizer_dims(coeffs: np.ndarray, n: int, q: int, support: Support | str) -> np.ndarray:
    """Centralizer dimensions for a batch of coefficient vectors."""
    mats = fq.to_matrices(coeffs, n, support)
    return fq.support_dim(n, support) - fq.batched_rank(fq.ad_matrices(mats, support), q)


def estimate_work(n: int, q: int, support: Support | str, method: str) -> int:
    d = fq.support_dim(n, support)
    if method == "centralizer-sum":
        c = fq.support_dim(n, fq.image_support(support))
        return q ** d * max(1, d * d * c)
    return q ** (2 * d) * n ** 3


def _chunks(total: int, size: int = CHUNK) -> list[tuple[int, int]]:
    return [(s, min(s + size, total)) for s in range(0, total, size)]


def _histogram_chunk(n, q, support, lo, hi) -> np.ndarray:
    dims = centralizer_dims(fq.elements(n, q, support, lo, hi), n, q, support)
    return np.bincount(dims, minlength=fq.support_dim(n, support) + 1)


def _enumerate_chunk(n, q, support, lo, hi, Y) -> int:
    X = fq.to_matrices(fq.elements(n, q, support, lo, hi), n, support)
    XY = np.einsum("aij,bjk->abik", X, Y)
    YX = np.einsum("bij,ajk->abik", Y, X)
    return int(((XY - YX) % q == 0).all(axis=(2, 3)).sum())


def count_commuting_pairs(n: int, q: int, support: Support | str = Support.BOREL,
                          method: str = "centralizer-sum", threads: int = 1,
                          budget: int = DEFAULT_BUDGET) -> PointCount:
    """Count ``(X, Y)`` in ``support(F_q)^2`` with ``[X, Y] = 0``.

    The centralizer-sum method adds ``q^dim c(X)`` over all ``X``; the
    enumeration method tests every pair.  Chunks are reduced by exact integer
    addition, so the result does not depend on ``threads``.
    """
    fq.check_field(q)
    support = Support(support)
    if n < 1:
        raise ValueError("n must be positive")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    work = check(f"count_commuting_pairs(n={n}, q={q}, {support.value}, {method})",
                 estimate_work(n, q, support, method), budget)
    d = fq.support_dim(n, support)
    total = q ** d
    with ThreadPoolExecutor(max_workers=threads) as pool:
        if method == "centralizer-sum":
            parts = pool.map(lambda c: _histogram_chunk(n, q, support, *c), _chunks(total))
            hist = sum(parts, np.zeros(d + 1, dtype=np.int64))
            histogram = {k: int(v) for k, v in enumerate(hist) if v}
            count = sum(v * q ** k for k, v in histogram.items())
        else:
            Y = fq.to_matrices(fq.elements(n, q, support), n, support)
            size = max(1, (1 << 21) // max(1, total * n * n))
            count = sum(pool.map(lambda c: _enumerate_chunk(n, q, support, *c, Y), _chunks(total, size)))
            histogram = {}
    return PointCount(n, q, support, int(count), method, histogram, work)
