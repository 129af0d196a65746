"""Tractability diagnostics: ratio traces and growth classification.

Weak-tractability evidence is collected as traces of
log N(eps, d) / (d + log(1/eps)) over explicit (d, eps) grids, either from
the closed-form information-complexity bound or from the empirical Korobov
scan.  The (s, t) generalization replaces the denominator by
d**s + (log(1/eps))**t.  The classifier reports the limit A of a_j / log j
(symbolically, per weight family), the resulting bound on the eps-exponent
of strong polynomial tractability, and a finite-range growth classification
of the partial sums S_lam(d) = sum_{j<=d} omega**(lam * a_j).

All asymptotic statements are recast as monotonicity checks on finite
grids; the reports carry an explicit disclaimer that finite data cannot
prove asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import (
    _OVERFLOW_LOG,
    LAMBDA_GRID,
    empirical_info_complexity,
    log_info_complexity_bound,
)
from .space import DEFAULT_TOL, WeightModel

GROWTH_DISCLAIMER = (
    "growth classes are fitted on a finite d-range and are heuristic; "
    "finite data cannot prove asymptotic statements"
)


@dataclass(frozen=True)
class TraceRecord:
    d: int
    epsilon: float
    n_value: float
    ratio: float


@dataclass(frozen=True)
class TractTrace:
    """Sorted (d, eps, N, ratio) records for one mode and source."""

    records: tuple[TraceRecord, ...]
    mode: str
    source: str

    def rows(self) -> list[dict]:
        return [
            {
                "d": r.d,
                "epsilon": r.epsilon,
                "n": r.n_value,
                "ratio": r.ratio,
                "mode": self.mode,
                "source": self.source,
            }
            for r in self.records
        ]


def _log_n_value(eps: float, d: int, model: WeightModel, source: str, variant: str, tol: float, n_cap: int) -> tuple[float, float]:
    """(log N, N) for one grid cell; N is the inf sentinel past 2**62."""
    if source == "bound":
        log_n = log_info_complexity_bound(eps, d, model, variant, tol)[0]
        n_val = math.inf if log_n > _OVERFLOW_LOG else float(math.ceil(math.exp(log_n)))
        return log_n, n_val
    if source == "empirical":
        n_val = empirical_info_complexity(eps, d, model, tol, n_cap)
        return math.log(n_val), float(n_val)
    raise ValueError(f"source must be 'bound' or 'empirical', got {source!r}")


def st_ratio_trace(
    s: float,
    t: float,
    d_list,
    eps_list,
    model: WeightModel,
    source: str = "bound",
    tol: float = DEFAULT_TOL,
    variant: str = "korobov",
    n_cap: int = 100_000,
) -> TractTrace:
    """Ratios log N / (d**s + log(1/eps)**t) over the (d, eps) grid.

    Requires t >= 1 (the eps-direction cannot be dampened below the first
    power without losing the bound).  s = t = 1 recovers the plain
    weak-tractability ratio.
    """
    if not (s > 0.0):
        raise ValueError(f"s must be positive, got {s}")
    if t < 1.0:
        raise ValueError(f"t must be >= 1, got {t}")
    records = []
    for d in sorted(set(int(v) for v in d_list)):
        if d < 1:
            raise ValueError(f"dimension must be >= 1, got {d}")
        for eps in sorted(set(float(v) for v in eps_list)):
            if not (0.0 < eps < 1.0):
                raise ValueError(f"eps must lie in (0, 1), got {eps}")
            log_n, n_val = _log_n_value(eps, d, model, source, variant, tol, n_cap)
            denom = float(d) ** s + math.log(1.0 / eps) ** t
            records.append(
                TraceRecord(d=d, epsilon=eps, n_value=n_val, ratio=log_n / denom)
            )
    mode = "exp_wt" if s == 1.0 and t == 1.0 else f"exp_st_wt(s={s:g},t={t:g})"
    return TractTrace(records=tuple(records), mode=mode, source=source)


def wt_ratio_trace(
    d_list,
    eps_list,
    model: WeightModel,
    source: str = "bound",
    tol: float = DEFAULT_TOL,
    variant: str = "korobov",
    n_cap: int = 100_000,
) -> TractTrace:
    """Weak-tractability ratios log N / (d + log(1/eps))."""
    return st_ratio_trace(1.0, 1.0, d_list, eps_list, model, source, tol, variant, n_cap)


def _a_log_limit(model: WeightModel) -> float:
    """A = lim_j a_j / log j, symbolically per weight family.

    The finite prefix never affects the limit.  Constant and explicit
    families (bounded tails) give 0; linear and positive-power growth give
    infinity; the logarithmic family gives its own kappa (natural log).
    """
    fam = model.a
    if fam.kind in ("constant", "explicit"):
        return 0.0
    if fam.kind == "linear":
        return math.inf
    if fam.kind == "logarithmic":
        return fam.kappa
    return math.inf if fam.p > 0 else 0.0  # power: j**p with p = 0 is constant


def _closed_form_growth(model: WeightModel) -> str:
    """Growth of S_1(d) = sum_{j<=d} omega**a_j in closed form, per family."""
    fam = model.a
    if fam.kind in ("constant", "explicit") or (fam.kind == "power" and fam.p == 0):
        return "linear"  # bounded a_j: terms do not decay
    if fam.kind in ("linear", "power"):
        return "bounded"  # omega**a_j summable
    beta = fam.kappa * math.log(1.0 / model.omega)  # terms (j+1)**(-beta)
    if beta > 1.0:
        return "bounded"
    if beta == 1.0:
        return "logarithmic"
    return f"polynomial(d^{1.0 - beta:g})"


_GROWTH_TO_TRACT = {
    "bounded": "alg_polynomial",
    "logarithmic": "alg_polynomial",
    "polylog": "alg_quasi_polynomial",
}


def _empirical_growth(s_values: list[tuple[int, float]]) -> str:
    """Finite-range classification of S_1(d) growth (heuristic).

    The power exponent is fitted on the last dyadic step; in the
    sub-polynomial regime the polylog degree is estimated from the growth
    of the per-octave increments (which are ~ (log d)**(t-1) for
    (log d)**t growth).
    """
    ds = [d for d, _ in s_values]
    ss = [s for _, s in s_values]
    if ss[-1] - ss[len(ss) // 2] < 1e-9:
        return "bounded"
    alpha = math.log(ss[-1] / ss[-2]) / math.log(ds[-1] / ds[-2])
    # log growth still shows alpha ~ 1/log(d) on finite ranges, so the
    # polynomial branch only fires above that scale
    if alpha >= 0.25:
        return "linear" if alpha > 0.9 else f"polynomial(d^{alpha:.2g})"
    increments = [max(b - a, 1e-300) for a, b in zip(ss, ss[1:])]
    t_est = 1.0 + math.log(increments[-1] / increments[0]) / math.log(
        math.log(ds[-1]) / math.log(ds[0])
    )
    return "logarithmic" if t_est <= 1.3 else "polylog"


def alg_classify(model: WeightModel, d_max: int = 1024, tol: float = DEFAULT_TOL) -> dict:
    """Algebraic-tractability report for the model's weight sequence.

    Contains the symbolic limit A of a_j / log j, the bound
    min(2, 2 / (A * log(1/omega))) on the eps-exponent of strong polynomial
    tractability, partial sums S_lam(d) on a dyadic d-grid for the lambda
    grid, and a heuristic growth classification of S_1(d) with the closed
    form attached.
    """
    if d_max < 4:
        raise ValueError(f"d_max must be >= 4, got {d_max}")
    a_limit = _a_log_limit(model)
    log_omega_inv = math.log(1.0 / model.omega)
    exponent_bound = 2.0 if a_limit == 0.0 else min(2.0, 2.0 / (a_limit * log_omega_inv))

    d_grid = []
    d = 4
    while d < d_max:
        d_grid.append(d)
        d *= 2
    d_grid.append(d_max)

    partial_sums = {}
    for lam in LAMBDA_GRID:
        running = 0.0
        j = 0
        row = []
        for d in d_grid:
            while j < d:
                j += 1
                running += model.omega ** (lam * model.a_j(j))
            row.append((d, running))
        partial_sums[lam] = row

    s1 = partial_sums[1.0]
    empirical = _empirical_growth(s1)
    closed = _closed_form_growth(model)
    tract_class = _GROWTH_TO_TRACT.get(empirical, "none_of_the_sufficient_conditions")
    return {
        "a_log_limit": a_limit,
        "spt_eps_exponent_bound": exponent_bound,
        "partial_sums": partial_sums,
        "growth": {
            "empirical_class": empirical,
            "closed_form_class": closed,
            "alg_tractability_class": tract_class,
            "s1_over_log_d": [(d, s / math.log(d)) for d, s in s1],
        },
        "disclaimer": GROWTH_DISCLAIMER,
    }
