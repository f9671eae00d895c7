"""Tangent spaces of the commuting variety of a Borel of gl_n over F_q."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fq
from .budget import DEFAULT_BUDGET, check
from .fq import FqElement, Support


def _as_array(X) -> np.ndarray:
    return X.array if isinstance(X, FqElement) else np.asarray(X, dtype=np.int64)


def tangent_dim(X, Y, q: int | None = None, support: Support | str = Support.BOREL) -> int:
    """Dimension of ``{(W, Z) in support^2 : [X, Z] + [W, Y] = 0}`` at a commuting pair."""
    if isinstance(X, FqElement):
        q = X.q
    if q is None:
        raise ValueError("q is required for raw arrays")
    x, y = _as_array(X) % q, _as_array(Y) % q
    if ((x @ y - y @ x) % q).any():
        raise ValueError("X and Y do not commute")
    ads = fq.ad_matrices(np.stack([x, y]), support, Support.FULL)
    system = np.concatenate([ads[0], -ads[1]], axis=1)
    return 2 * fq.support_dim(x.shape[0], support) - fq.rank_mod(system, q)


def is_regular(X, q: int | None = None) -> bool:
    """Regular in gl_n: the full centralizer has dimension ``n``."""
    if isinstance(X, FqElement):
        q = X.q
    x = _as_array(X) % q
    n = x.shape[0]
    return n * n - fq.rank_mod(fq.ad_matrices(x[None], Support.FULL)[0], q) == n


def borel_centralizer_basis(X: np.ndarray, q: int) -> np.ndarray:
    """Basis (rows of coefficient vectors) of ``c_b(X)``."""
    return fq.nullspace_mod(fq.ad_matrices(X[None], Support.BOREL)[0], q)


@dataclass
class SmoothnessReport:
    n: int
    q: int
    trials: int
    seed: int | None
    expected: int
    violations: list[dict] = field(default_factory=list)
    tangent_histogram: dict[int, int] = field(default_factory=dict)
    rejected_draws: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n, "q": self.q, "trials": self.trials, "seed": self.seed,
            "expected_tangent_dim": self.expected,
            "violations": self.violations, "violation_count": len(self.violations),
            "tangent_histogram": {str(k): v for k, v in sorted(self.tangent_histogram.items())},
            "rejected_draws": self.rejected_draws,
        }


def _expected(n: int) -> int:
    return fq.support_dim(n, Support.BOREL) + n


def _record(report: SmoothnessReport, X, Y, t: int) -> None:
    report.tangent_histogram[t] = report.tangent_histogram.get(t, 0) + 1
    if t != report.expected:
        report.violations.append({"X": X.tolist(), "Y": Y.tolist(), "tangent_dim": t})


def _trial(n: int, q: int, seed: int, k: int, max_draws: int):
    rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
    pos = fq.positions(n, Support.BOREL)
    for draw in range(max_draws):
        X = fq.to_matrices(rng.integers(0, q, size=(1, len(pos))), n, Support.BOREL)[0]
        if is_regular(X, q):
            break
    else:
        raise RuntimeError(f"no regular element found in {max_draws} draws")
    basis = borel_centralizer_basis(X, q)
    coeffs = (rng.integers(0, q, size=basis.shape[0]) @ basis) % q
    Y = fq.to_matrices(coeffs[None], n, Support.BOREL)[0]
    return X, Y, tangent_dim(X, Y, q), draw


def smoothness_sample(n: int, q: int, trials: int, seed: int, threads: int = 1,
                      budget: int = DEFAULT_BUDGET, max_draws: int = 10_000) -> SmoothnessReport:
    """Draw commuting pairs with ``X`` regular and check the tangent dimension.

    Trial ``k`` uses its own generator seeded by ``(seed, k)``, so results do
    not depend on ``threads``.
    """
    fq.check_field(q)
    d = fq.support_dim(n, Support.BOREL)
    check(f"smoothness_sample(n={n}, q={q}, trials={trials})", trials * (2 * d) ** 2 * n * n * 4, budget)
    report = SmoothnessReport(n, q, trials, seed, _expected(n))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda k: _trial(n, q, seed, k, max_draws), range(trials)))
    for X, Y, t, draws in results:
        report.rejected_draws += draws
        _record(report, X, Y, t)
    return report


def smoothness_exhaustive(n: int, q: int, budget: int = DEFAULT_BUDGET) -> SmoothnessReport:
    """Check every commuting pair in the Borel whose first entry is regular."""
    fq.check_field(q)
    d = fq.support_dim(n, Support.BOREL)
    check(f"smoothness_exhaustive(n={n}, q={q})", q ** (2 * d) * (2 * d) ** 2 * n * n, budget)
    mats = fq.to_matrices(fq.elements(n, q, Support.BOREL), n, Support.BOREL)
    report = SmoothnessReport(n, q, 0, None, _expected(n))
    for X in mats:
        if not is_regular(X, q):
            continue
        for Y in mats:
            if ((X @ Y - Y @ X) % q).any():
                continue
            report.trials += 1
            _record(report, X, Y, tangent_dim(X, Y, q))
    return report


def singular_witness(n: int, q: int) -> tuple[np.ndarray, np.ndarray, int]:
    """A commuting pair with tangent dimension above ``dim b + n``.

    ``X = I + E_(n-1,n)`` (just ``I`` for ``n = 2``) and ``Y = X^2`` share a
    wall where a simple root space and the torus degenerate together.
    """
    if n < 2:
        raise ValueError("C(b) is smooth for n = 1")
    X = np.eye(n, dtype=np.int64)
    if n >= 3:
        X[n - 2, n - 1] = 1
    Y = (X @ X) % q
    t = tangent_dim(X, Y, q)
    if t <= _expected(n):
        raise ArithmeticError("constructed pair is not singular")
    return X, Y, t
