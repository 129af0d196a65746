"""Worst-case integration error of lattice rules, three independent ways.

For a rule with prime modulus N and generating vector g, the squared
worst-case error over the unit ball of the space equals the Fourier mass of
the dual lattice,

    e^2 = sum over nonzero h with h . g == 0 (mod N) of rho(h),

which by character orthogonality also equals

    e^2 = -1 + (1/N) * sum_k prod_j theta_j({k g_j / N})        (theta product)
        = -1 + (1/N^2) * sum_{k,l} K(x_k, x_l)                  (kernel double sum).

``wce2_theta_product`` is the O(N d) workhorse; ``wce2_dual_enum`` and
``wce2_kernel_double_sum`` are slower oracles used for cross-validation.
Every evaluator reports its certified truncation bound alongside the value.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceededError, OracleInfeasibleError
from .lattice import LatticeRule
from .space import DEFAULT_TOL, WeightModel, theta_terms

# Work budget for dual-lattice enumeration (nodes visited plus candidate
# frequencies scored); override with the KOROBOV_MAX_ENUM environment variable.
DEFAULT_ENUM_CAP = 10**8

# Pair cap for the kernel double sum.
DOUBLE_SUM_PAIR_CAP = 10**8


def enum_cap() -> int:
    raw = os.environ.get("KOROBOV_MAX_ENUM")
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class ErrorEstimate:
    """Squared worst-case error with its certified truncation bound."""

    value: float
    trunc_bound: float
    method: str

    @property
    def e(self) -> float:
        """Worst-case error, reported as sqrt(max(value, 0))."""
        return math.sqrt(max(self.value, 0.0))

    @property
    def zero_indistinguishable(self) -> bool:
        """True when the value is below its own truncation bound."""
        return self.value < self.trunc_bound

    def to_dict(self) -> dict:
        return {
            "e2": self.value,
            "e": self.e,
            "trunc_bound": self.trunc_bound,
            "method": self.method,
        }


# ---------------------------------------------------------------------------
# Theta tables: per-coordinate values at the N fractions r/N
# ---------------------------------------------------------------------------

def _fold_terms(w: np.ndarray, n: int) -> np.ndarray:
    """Bucket series terms w_h (h = 1..H) by h mod n, pairwise-summed.

    cos(2*pi*h*t) at t = r/n depends only on h mod n, so theta values at
    all n fractions come from one length-n DFT of these buckets.  The
    reduction runs along the contiguous axis so numpy's pairwise summation
    applies (a long sequential accumulation would cost ~1e-10 absolute on
    slowly decaying series).
    """
    padded = np.zeros(math.ceil(w.size / n) * n, dtype=np.float64)
    padded[: w.size] = w
    col_sums = padded.reshape(-1, n).T.copy().sum(axis=1)
    return np.roll(col_sums, 1)  # column j holds residue (j + 1) mod n

class ThetaTable:
    """Per-coordinate theta values at t = r/N for r = 0..N-1.

    Coordinates sharing the same (a_j, b_j) share one table slot.  Each slot
    stores the certified per-evaluation truncation bound ``tau`` and the
    upper majorant theta_j(0) + tau used in product error propagation.
    Read-only after construction, hence safe to share across workers.
    """

    def __init__(self, model: WeightModel, n: int, d: int, lam: float, tol: float):
        self.n = n
        self.d = d
        self.lam = lam
        slots: dict[tuple[float, float], int] = {}
        self.values: list[np.ndarray] = []
        self.taus: list[float] = []
        self.majors: list[float] = []
        coord_slot = []
        for j in range(1, d + 1):
            key = (model.a_j(j), model.b_j(j))
            if key not in slots:
                w, tail = theta_terms(j, model, lam, tol)
                vals = 1.0 + 2.0 * np.real(np.fft.fft(_fold_terms(w, n)))
                slots[key] = len(self.values)
                self.values.append(vals)
                self.taus.append(2.0 * tail)
                self.majors.append(1.0 + 2.0 * float(np.sum(w)) + 2.0 * tail)
            coord_slot.append(slots[key])
        self.coord_slot = tuple(coord_slot)
        # First-order propagation of per-factor certificates through the
        # d-fold product, uniform in k.
        self.product_bound = sum(
            self.taus[self.coord_slot[j]]
            * math.prod(self.majors[self.coord_slot[i]] for i in range(d) if i != j)
            for j in range(d)
        )

    def eval_vectors(self, vectors: np.ndarray) -> np.ndarray:
        """Squared errors for a block of generating vectors, shape (m, d).

        Vectorized form of -1 + (1/N) sum_k prod_j theta_j({k g_j / N}).
        """
        n = self.n
        k = np.arange(n, dtype=np.int64)[None, :]
        acc = np.ones((vectors.shape[0], n), dtype=np.float64)
        for j in range(self.d):
            residues = vectors[:, j : j + 1] * k % n
            acc *= self.values[self.coord_slot[j]][residues]
        return acc.mean(axis=1) - 1.0


@lru_cache(maxsize=64)
def theta_table(model: WeightModel, n: int, d: int, lam: float, tol: float) -> ThetaTable:
    """Memoized table build; identical inputs share one read-only table."""
    return ThetaTable(model, n, d, lam, tol)


def wce2_theta_product(
    rule: LatticeRule,
    model: WeightModel,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
) -> ErrorEstimate:
    """Squared worst-case error via the length-N character sum.

    With ``lam`` < 1 the weights are scaled to lam * a_j, which evaluates
    the Jensen-dominating dual sum used by the averaging bounds.
    """
    table = theta_table(model, rule.n, rule.d, lam, tol)
    vec = np.asarray(rule.g, dtype=np.int64)[None, :]
    value = float(table.eval_vectors(vec)[0])
    return ErrorEstimate(value=value, trunc_bound=table.product_bound, method="theta_product")


# ---------------------------------------------------------------------------
# Dual-lattice enumeration
# ---------------------------------------------------------------------------

def _range_limit(budget: float, lam: float, a: float, b: float) -> int:
    if budget < 0.0:
        return -1
    return int(math.floor((budget / (lam * a)) ** (1.0 / b)))


def _region_volume(t_cut: float, lam: float, weights: list[tuple[float, float]]) -> float:
    """Continuous volume of {x : sum lam*a_j*|x_j|**b_j <= t_cut} (Dirichlet)."""
    if not weights:
        return 1.0
    log_vol = 0.0
    inv_sum = 0.0
    for a, b in weights:
        c = (t_cut / (lam * a)) ** (1.0 / b)
        log_vol += math.log(2.0 * c) + math.lgamma(1.0 + 1.0 / b)
        inv_sum += 1.0 / b
    return math.exp(log_vol - math.lgamma(1.0 + inv_sum))


def _enum_plan(rule: LatticeRule, model: WeightModel, lam: float, tol: float):
    """Region threshold, tail certificate, coordinate order, and work estimate
    for one dual enumeration.

    The cut T makes the mass outside {h : sum_j lam*a_j*|h_j|**b_j <= T},
    bounded by omega**(T/2) * prod_j theta_j(0) at weights lam/2, fall
    below ``tol``.  The congruence is solved in the coordinate with the
    widest range, so the estimated work is the prefix region size plus
    1/N-th of the full region size.
    """
    n, d = rule.n, rule.d
    half_prod = 1.0
    for j in range(1, d + 1):
        w, tail = theta_terms(j, model, lam / 2.0, min(tol, 1e-6))
        half_prod *= 1.0 + 2.0 * float(np.sum(w)) + 2.0 * tail
    t_cut = 2.0 * math.log(half_prod / tol) / math.log(1.0 / model.omega)
    t_cut = max(t_cut, lam * model.a_j(1))  # keep at least |h| = 1 in range
    tail_bound = model.omega ** (t_cut / 2.0) * half_prod

    weights = [(model.a_j(j), model.b_j(j)) for j in range(1, d + 1)]
    solve_idx = max(
        range(d), key=lambda i: _range_limit(t_cut, lam, weights[i][0], weights[i][1])
    )
    order = [i for i in range(d) if i != solve_idx] + [solve_idx]
    est = _region_volume(t_cut, lam, [weights[i] for i in order[:-1]])
    est += _region_volume(t_cut, lam, weights) / n + 3.0**d
    return t_cut, tail_bound, weights, order, est


def dual_enum_work_estimate(
    rule: LatticeRule,
    model: WeightModel,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
) -> float:
    """Estimated enumeration work of :func:`wce2_dual_enum` at this tolerance."""
    return _enum_plan(rule, model, lam, tol)[4]


def wce2_dual_enum(
    rule: LatticeRule,
    model: WeightModel,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
) -> ErrorEstimate:
    """Squared worst-case error by summing rho over the dual lattice.

    Enumerates, by recursive coordinate descent, all nonzero h in the
    truncation region with h . g == 0 (mod N), summing rho at weights
    lam * a_j; the omitted mass is certified below ``tol``.  Intended as a
    small-instance oracle; infeasibly large regions raise
    :class:`OracleInfeasibleError`.
    """
    n, d = rule.n, rule.d
    log_omega_inv = math.log(1.0 / model.omega)
    t_cut, tail_bound, weights, order, est = _enum_plan(rule, model, lam, tol)
    budget = enum_cap()
    if est > 4.0 * budget:
        raise OracleInfeasibleError(
            f"estimated enumeration work {est:.3g} exceeds the cap {budget}"
        )

    a_solve, b_solve = weights[order[-1]]
    g_solve = rule.g[order[-1]] % n
    g_inv = pow(g_solve, -1, n) if g_solve != 0 else None
    leaf_sums: list[float] = []
    work = 0

    def solve_leaf(exponent: float, dot_mod: int, prefix_zero: bool) -> None:
        nonlocal work
        limit = _range_limit(t_cut - exponent, lam, a_solve, b_solve)
        if limit < 0:
            return
        if g_inv is None:
            if dot_mod % n != 0:
                return
            hs = np.arange(-limit, limit + 1, dtype=np.int64)
        else:
            r = (-dot_mod * g_inv) % n
            lo = -((limit + r) // n)
            hi = (limit - r) // n
            if lo > hi:
                return
            hs = r + n * np.arange(lo, hi + 1, dtype=np.int64)
        if prefix_zero:
            hs = hs[hs != 0]
        if hs.size == 0:
            return
        work += hs.size
        if work > budget:
            raise OracleInfeasibleError(f"enumeration work exceeded the cap {budget}")
        expo = exponent + lam * a_solve * np.abs(hs).astype(np.float64) ** b_solve
        leaf_sums.append(float(np.sum(np.exp(-log_omega_inv * expo))))

    def descend(pos: int, exponent: float, dot_mod: int, prefix_zero: bool) -> None:
        nonlocal work
        if pos == d - 1:
            solve_leaf(exponent, dot_mod, prefix_zero)
            return
        idx = order[pos]
        a, b = weights[idx]
        limit = _range_limit(t_cut - exponent, lam, a, b)
        g_here = rule.g[idx] % n
        for h in range(-limit, limit + 1):
            work += 1
            if work > budget:
                raise OracleInfeasibleError(f"enumeration work exceeded the cap {budget}")
            descend(
                pos + 1,
                exponent + lam * a * float(abs(h)) ** b,
                (dot_mod + h * g_here) % n,
                prefix_zero and h == 0,
            )

    descend(0, 0.0, 0, True)
    return ErrorEstimate(
        value=math.fsum(leaf_sums), trunc_bound=tail_bound, method="dual_enum"
    )


def dominant_dual_frequency(
    rule: LatticeRule,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
) -> tuple[int, ...]:
    """Nonzero dual frequency with maximal rho, ties to the lexicographically
    smallest vector.

    Found by bounded enumeration of the same truncation region used by
    :func:`wce2_dual_enum`; the maximizer is inside the region because the
    mass outside it is below the region threshold.
    """
    n, d = rule.n, rule.d
    log_omega_inv = math.log(1.0 / model.omega)
    half_prod = 1.0
    for j in range(1, d + 1):
        w, tail = theta_terms(j, model, 0.5, min(tol, 1e-6))
        half_prod *= 1.0 + 2.0 * float(np.sum(w)) + 2.0 * tail
    t_cut = 2.0 * math.log(half_prod / tol) / log_omega_inv
    t_cut = max(t_cut, model.a_j(1) * float(n) ** model.b_j(1) + 1.0)  # h = N e_1 is dual

    weights = [(model.a_j(j), model.b_j(j)) for j in range(1, d + 1)]
    budget = enum_cap()
    best: tuple[float, tuple[int, ...]] | None = None
    work = 0
    prefix = [0] * d

    def descend(pos: int, exponent: float, dot_mod: int, prefix_zero: bool) -> None:
        nonlocal work, best
        if pos == d:
            if prefix_zero or dot_mod % n != 0:
                return
            key = (exponent, tuple(prefix))
            if best is None or key[0] < best[0] or (key[0] == best[0] and key[1] < best[1]):
                best = key
            return
        a, b = weights[pos]
        limit = _range_limit(t_cut - exponent, 1.0, a, b)
        for h in range(-limit, limit + 1):
            work += 1
            if work > budget:
                raise OracleInfeasibleError(f"enumeration work exceeded the cap {budget}")
            prefix[pos] = h
            descend(
                pos + 1,
                exponent + a * float(abs(h)) ** b,
                (dot_mod + h * (rule.g[pos] % n)) % n,
                prefix_zero and h == 0,
            )

    descend(0, 0.0, 0, True)
    assert best is not None, "the dual lattice always contains N * e_1"
    return best[1]


# ---------------------------------------------------------------------------
# Kernel double sum
# ---------------------------------------------------------------------------

def wce2_kernel_double_sum(
    rule: LatticeRule,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
) -> ErrorEstimate:
    """Squared worst-case error via -1 + (1/N^2) sum_{k,l} K(x_k, x_l).

    Point differences are reduced to exact residues (k - l) g_j mod N, and
    each coordinate factor is evaluated by direct series summation (no FFT
    fold), keeping this path structurally distinct from the theta-product
    evaluator.  Oracle use only: the pair count N^2 is capped.
    """
    n, d = rule.n, rule.d
    if n * n > DOUBLE_SUM_PAIR_CAP:
        raise CapExceededError(f"kernel double sum needs {n * n} pairs, cap is {DOUBLE_SUM_PAIR_CAP}")
    factors = []
    taus = []
    majors = []
    for j in range(1, d + 1):
        w, tail = theta_terms(j, model, 1.0, tol)
        # theta at every fraction r/N by direct per-term summation; angles
        # are reduced mod N in exact integer arithmetic first, since
        # cos(2*pi*h*r/N) loses precision for large h*r
        hm = np.arange(1, w.size + 1, dtype=np.int64) % n
        vals = np.empty(n, dtype=np.float64)
        r_chunk = max(1, 4_000_000 // max(w.size, 1))
        for start in range(0, n, r_chunk):
            r = np.arange(start, min(start + r_chunk, n), dtype=np.int64)
            angles = 2.0 * math.pi / n * (r[:, None] * hm[None, :] % n)
            vals[start : start + r.size] = 1.0 + 2.0 * np.sum(np.cos(angles) * w[None, :], axis=1)
        factors.append(vals)
        taus.append(2.0 * tail)
        majors.append(1.0 + 2.0 * float(np.sum(w)) + 2.0 * tail)
    bound = sum(
        tau * math.prod(m for i, m in enumerate(majors) if i != jdx)
        for jdx, tau in enumerate(taus)
    )
    k = np.arange(n, dtype=np.int64)
    total = 0.0
    chunk = max(1, DOUBLE_SUM_PAIR_CAP // (8 * n))
    for start in range(0, n, chunk):
        rows = k[start : start + chunk, None] - k[None, :]
        acc = np.ones(rows.shape, dtype=np.float64)
        for j in range(d):
            acc *= factors[j][rows * rule.g[j] % n]
        total += float(np.sum(acc))
    return ErrorEstimate(
        value=total / float(n) ** 2 - 1.0, trunc_bound=bound, method="kernel_double_sum"
    )
