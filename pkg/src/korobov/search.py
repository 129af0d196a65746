"""Exhaustive generating-vector searches and family averages.

The Korobov search scans all N scalar generators; the general search scans
all N^d vectors of a tiny instance.  Both select the lambda = 1 error
minimizer with a deterministic tie rule (ties within max truncation bound
plus a fixed slack resolve to the smallest scalar / lexicographically
smallest vector), so results do not depend on chunking or thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError
from .lattice import KorobovParam, LatticeRule, is_prime, korobov_vector
from .space import DEFAULT_TOL, WeightModel
from .wce import ErrorEstimate, theta_table

TIE_SLACK = 1e-13

GENERAL_SEARCH_CAP = 10**6

# Roughly bounds the scratch memory of one evaluation chunk.
_CHUNK_CELLS = 2**21


def _require_prime(n: int) -> None:
    if not is_prime(n):
        raise ValueError(f"search modulus must be prime, got {n}")


@dataclass(frozen=True)
class SearchResult:
    """Best rule found, its error estimate, and tie statistics."""

    best_rule: LatticeRule
    best_e2: ErrorEstimate
    evaluated: int
    ties: int

    def to_dict(self) -> dict:
        return {
            "best_rule": self.best_rule.to_dict(),
            "best_e2": self.best_e2.to_dict(),
            "evaluated": self.evaluated,
            "ties": self.ties,
        }


def _korobov_block(n: int, d: int, gs: np.ndarray) -> np.ndarray:
    """Vectors (1, g, g^2, ..., g^(d-1)) mod n for a block of scalars."""
    out = np.empty((gs.size, d), dtype=np.int64)
    out[:, 0] = 1 % n
    for j in range(1, d):
        out[:, j] = out[:, j - 1] * gs % n
    return out


def _general_block(n: int, d: int, idx: np.ndarray) -> np.ndarray:
    """Decode lexicographic indices into vectors (g_1 most significant)."""
    out = np.empty((idx.size, d), dtype=np.int64)
    rem = idx.astype(np.int64)
    for j in range(d - 1, -1, -1):
        out[:, j] = rem % n
        rem //= n
    return out


def _eval_all(table, n: int, d: int, count: int, block_fn, threads: int) -> np.ndarray:
    chunk = max(1, _CHUNK_CELLS // max(n, 1))
    starts = range(0, count, chunk)

    def run(start: int) -> tuple[int, np.ndarray]:
        ids = np.arange(start, min(start + chunk, count), dtype=np.int64)
        return start, table.eval_vectors(block_fn(ids))

    e2 = np.empty(count, dtype=np.float64)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for start, vals in pool.map(run, starts):
                e2[start : start + vals.size] = vals
    else:
        for start in starts:
            s, vals = run(start)
            e2[s : s + vals.size] = vals
    return e2


def search_korobov(
    n: int,
    d: int,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
) -> SearchResult:
    """Evaluate every scalar generator g in {0, ..., n-1} and minimize.

    g = 0 participates like any other candidate.  For d = 1 every scalar
    expands to the vector (1), so all candidates tie and g = 0 wins.
    """
    _require_prime(n)
    table = theta_table(model, n, d, 1.0, tol)
    e2 = _eval_all(table, n, d, n, lambda ids: _korobov_block(n, d, ids), threads)
    tie_tol = table.product_bound + TIE_SLACK
    best_val = float(np.min(e2))
    tied = np.flatnonzero(e2 <= best_val + tie_tol)
    g_best = int(tied[0])
    return SearchResult(
        best_rule=korobov_vector(KorobovParam(n=n, g=g_best, d=d)),
        best_e2=ErrorEstimate(float(e2[g_best]), table.product_bound, "theta_product"),
        evaluated=n,
        ties=int(tied.size),
    )


def search_general(
    n: int,
    d: int,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
) -> SearchResult:
    """Exhaustive search over all of {0, ..., n-1}^d (tiny instances only)."""
    _require_prime(n)
    count = n**d
    if count > GENERAL_SEARCH_CAP:
        raise CapExceededError(f"general search space {count} exceeds cap {GENERAL_SEARCH_CAP}")
    table = theta_table(model, n, d, 1.0, tol)
    e2 = _eval_all(table, n, d, count, lambda ids: _general_block(n, d, ids), threads)
    tie_tol = table.product_bound + TIE_SLACK
    best_val = float(np.min(e2))
    tied = np.flatnonzero(e2 <= best_val + tie_tol)
    best_idx = int(tied[0])
    g_best = tuple(int(v) for v in _general_block(n, d, np.array([best_idx]))[0])
    return SearchResult(
        best_rule=LatticeRule(n=n, g=g_best),
        best_e2=ErrorEstimate(float(e2[best_idx]), table.product_bound, "theta_product"),
        evaluated=count,
        ties=int(tied.size),
    )


def candidate_errors(
    n: int,
    d: int,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
    family: str = "korobov",
    threads: int = 1,
) -> tuple[np.ndarray, float]:
    """All candidate squared errors in enumeration order, with their shared
    truncation bound.  Backs the per-candidate CSV export."""
    _require_prime(n)
    table = theta_table(model, n, d, 1.0, tol)
    if family == "korobov":
        e2 = _eval_all(table, n, d, n, lambda ids: _korobov_block(n, d, ids), threads)
    elif family == "general":
        count = n**d
        if count > GENERAL_SEARCH_CAP:
            raise CapExceededError(f"general search space {count} exceeds cap {GENERAL_SEARCH_CAP}")
        e2 = _eval_all(table, n, d, count, lambda ids: _general_block(n, d, ids), threads)
    else:
        raise ValueError(f"family must be 'korobov' or 'general', got {family!r}")
    return e2, table.product_bound


def mean_pow_error(
    n: int,
    d: int,
    lam: float,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
    family: str = "korobov",
    threads: int = 1,
) -> float:
    """Exact empirical mean over the family of the lambda-scaled dual sums.

    The averaged quantity is the dual-lattice sum at weights lam * a_j (the
    Jensen majorant of e^(2*lam)), not (e^2)**lam.
    """
    _require_prime(n)
    if family not in ("korobov", "general"):
        raise ValueError(f"family must be 'korobov' or 'general', got {family!r}")
    table = theta_table(model, n, d, lam, tol)
    if family == "korobov":
        e2 = _eval_all(table, n, d, n, lambda ids: _korobov_block(n, d, ids), threads)
    else:
        count = n**d
        if count > GENERAL_SEARCH_CAP:
            raise CapExceededError(f"general family size {count} exceeds cap {GENERAL_SEARCH_CAP}")
        e2 = _eval_all(table, n, d, count, lambda ids: _general_block(n, d, ids), threads)
    return float(np.mean(e2))
