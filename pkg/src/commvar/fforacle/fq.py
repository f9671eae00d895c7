"""Matrices over small prime fields and batched exact linear algebra.

Elements of a support (``full``, ``borel`` or ``nilradical`` of gl_n) are
coefficient vectors over the support positions in row-major order.  The
integer code of a vector is its base-``q`` value with the first position most
significant, so code order is lexicographic order on residues.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_Q = 13
PRIMES = (2, 3, 5, 7, 11, 13)


class Support(str, enum.Enum):
    FULL = "full"
    BOREL = "borel"
    NILRADICAL = "nilradical"


def check_field(q: int) -> None:
    if q not in PRIMES:
        raise ValueError(f"q must be a prime <= {MAX_Q}, got {q}")


@lru_cache(maxsize=None)
def positions(n: int, support: Support | str) -> tuple[tuple[int, int], ...]:
    support = Support(support)
    if support is Support.FULL:
        return tuple((i, j) for i in range(n) for j in range(n))
    off = 0 if support is Support.BOREL else 1
    return tuple((i, j) for i in range(n) for j in range(i + off, n))


def support_dim(n: int, support: Support | str) -> int:
    return len(positions(n, support))


def image_support(support: Support | str) -> Support:
    """Commutators of two elements of ``support`` lie in this support."""
    return Support.FULL if Support(support) is Support.FULL else Support.NILRADICAL


@lru_cache(maxsize=None)
def inverse_table(q: int) -> np.ndarray:
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, q - 2, q)
    return inv


def primitive_root(q: int) -> int:
    for g in range(1, q):
        if len({pow(g, k, q) for k in range(1, q)}) == q - 1:
            return g
    raise ValueError(q)


@dataclass(frozen=True)
class FqElement:
    """An ``n x n`` matrix over ``F_q`` supported on ``support``."""

    n: int
    q: int
    support: Support
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        check_field(self.q)
        object.__setattr__(self, "support", Support(self.support))
        rows = tuple(tuple(int(x) % self.q for x in row) for row in self.entries)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"entries must be {self.n}x{self.n}")
        allowed = set(positions(self.n, self.support))
        for i in range(self.n):
            for j in range(self.n):
                if rows[i][j] and (i, j) not in allowed:
                    raise ValueError(f"entry ({i},{j}) outside {self.support.value} support")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, a, q: int, support: Support | str = Support.BOREL) -> FqElement:
        a = np.asarray(a)
        return cls(a.shape[0], q, Support(support), tuple(tuple(int(x) for x in row) for row in a))

    @classmethod
    def from_code(cls, code: int, n: int, q: int, support: Support | str) -> FqElement:
        coeffs = decode(np.array([code], dtype=np.int64), n, q, support)
        return cls.from_array(to_matrices(coeffs, n, support)[0], q, support)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def coefficients(self) -> np.ndarray:
        a = self.array
        return np.array([a[i, j] for i, j in positions(self.n, self.support)], dtype=np.int64)

    def code(self) -> int:
        return int(encode(self.coefficients()[None, :], self.q)[0])

    def commutator(self, other: FqElement) -> np.ndarray:
        a, b = self.array, other.array
        return (a @ b - b @ a) % self.q


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def decode(codes: np.ndarray, n: int, q: int, support: Support | str) -> np.ndarray:
    """Codes -> coefficient vectors ``(N, d)``."""
    d = support_dim(n, support)
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.shape[0], d), dtype=np.int64)
    rest = codes.copy()
    for k in range(d - 1, -1, -1):
        out[:, k] = rest % q
        rest //= q
    return out


def encode(coeffs: np.ndarray, q: int) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.int64)
    code = np.zeros(coeffs.shape[0], dtype=np.int64)
    for k in range(coeffs.shape[1]):
        code = code * q + coeffs[:, k]
    return code


def to_matrices(coeffs: np.ndarray, n: int, support: Support | str) -> np.ndarray:
    pos = positions(n, support)
    rows = np.array([p[0] for p in pos], dtype=np.intp)
    cols = np.array([p[1] for p in pos], dtype=np.intp)
    out = np.zeros((coeffs.shape[0], n, n), dtype=np.int64)
    out[:, rows, cols] = coeffs
    return out


def from_matrices(mats: np.ndarray, n: int, support: Support | str) -> np.ndarray:
    pos = positions(n, support)
    rows = np.array([p[0] for p in pos], dtype=np.intp)
    cols = np.array([p[1] for p in pos], dtype=np.intp)
    return mats[:, rows, cols]


def elements(n: int, q: int, support: Support | str, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Coefficient vectors for codes ``start..stop-1`` in lexicographic order."""
    total = q ** support_dim(n, support)
    stop = total if stop is None else min(stop, total)
    return decode(np.arange(start, stop, dtype=np.int64), n, q, support)


# ---------------------------------------------------------------------------
# Linear maps
# ---------------------------------------------------------------------------

def ad_matrices(X: np.ndarray, domain: Support | str, codomain: Support | str | None = None) -> np.ndarray:
    """Matrices of ``Y -> [X, Y]`` for a batch ``X`` of shape ``(N, n, n)``.

    Columns index the ``domain`` positions; rows the ``codomain`` positions
    (defaulting to the support that contains ``[domain, domain]`` when ``X``
    lies in ``domain``).
    """
    N, n, _ = X.shape
    dom = positions(n, domain)
    cod = positions(n, codomain if codomain is not None else image_support(domain))
    full = np.zeros((N, n, n, len(dom)), dtype=np.int64)
    for k, (a, b) in enumerate(dom):
        # [X, E_ab] = X[:, a] e_b^T - e_a X[b, :]
        full[:, :, b, k] += X[:, :, a]
        full[:, a, :, k] -= X[:, b, :]
    rows = np.array([p[0] for p in cod], dtype=np.intp)
    cols = np.array([p[1] for p in cod], dtype=np.intp)
    return full[:, rows, cols, :]


def batched_rank(A: np.ndarray, q: int, fast_gf2: bool = True) -> np.ndarray:
    """Rank over ``F_q`` of every matrix in a batch ``(N, R, C)``.

    For ``q = 2`` rows are packed into machine words unless ``fast_gf2`` is off.
    """
    check_field(q)
    A = np.array(A, dtype=np.int64) % q
    if fast_gf2 and q == 2 and A.shape[2] <= 63:
        return batched_rank_gf2(pack_rows(A), A.shape[2])
    N, R, C = A.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or R == 0 or C == 0:
        return rank
    inv = inverse_table(q)
    row_ids = np.arange(R)
    for c in range(C):
        cand = (A[:, :, c] != 0) & (row_ids[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = np.argmax(cand[b], axis=1)
        r0 = rank[b]
        top = A[b, r0].copy()
        A[b, r0] = A[b, piv]
        A[b, piv] = top
        prow = (A[b, r0] * inv[A[b, r0, c]][:, None]) % q
        A[b, r0] = prow
        factors = A[b, :, c].copy()
        factors[np.arange(b.size), r0] = 0
        A[b] = (A[b] - factors[:, :, None] * prow[:, None, :]) % q
        rank[b] += 1
        if rank.min() >= R:
            break
    return rank


def pack_rows(A: np.ndarray) -> np.ndarray:
    """Pack a 0/1 batch ``(N, R, C)`` into row words ``(N, R)`` of uint64."""
    C = A.shape[2]
    weights = (np.uint64(1) << np.arange(C, dtype=np.uint64))
    return (A.astype(np.uint64) * weights).sum(axis=2, dtype=np.uint64)


def batched_rank_gf2(rows: np.ndarray, ncols: int = 64) -> np.ndarray:
    """Rank over GF(2) of packed row words ``(N, R)``, by word-parallel XOR."""
    rows = np.array(rows, dtype=np.uint64)
    N, R = rows.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or R == 0:
        return rank
    row_ids = np.arange(R)
    for c in range(ncols):
        bit = np.uint64(1) << np.uint64(c)
        cand = ((rows & bit) != 0) & (row_ids[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = np.argmax(cand[b], axis=1)
        r0 = rank[b]
        top = rows[b, r0].copy()
        rows[b, r0] = rows[b, piv]
        rows[b, piv] = top
        prow = rows[b, r0]
        hit = (rows[b] & bit) != 0
        hit[np.arange(b.size), r0] = False
        rows[b] ^= np.where(hit, prow[:, None], np.uint64(0))
        rank[b] += 1
        if rank.min() >= R:
            break
    return rank


def rank_mod(A: np.ndarray, q: int) -> int:
    return int(batched_rank(np.asarray(A)[None], q)[0])


def nullspace_mod(A: np.ndarray, q: int) -> np.ndarray:
    """Basis (rows) of ``{x : A x = 0}`` over ``F_q`` by reduced row echelon form."""
    check_field(q)
    A = np.array(A, dtype=np.int64) % q
    R, C = A.shape
    inv = inverse_table(q)
    pivots = []
    r = 0
    for c in range(C):
        if r == R:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        A[[r, p]] = A[[p, r]]
        A[r] = (A[r] * inv[A[r, c]]) % q
        for i in range(R):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % q
        pivots.append(c)
        r += 1
    free = [c for c in range(C) if c not in pivots]
    basis = np.zeros((len(free), C), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-A[i, f]) % q
    return basis
