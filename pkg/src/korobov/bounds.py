"""Closed-form error and information-complexity bounds.

For every lambda in (0, 1] the minimal error over general generating
vectors (and over Korobov vectors, for d >= 2) is dominated by

    [ c / N * prod_j (1 + 2 * A_lam * omega**(lam * a_j)) ] ** (1 / (2*lam)),

with c = 1 for general vectors and c = d - 1 for Korobov vectors.  Driving
this below a target eps gives the modulus threshold M_lam(eps, d) and, via
Bertrand's postulate, the information-complexity bound

    N(eps, d) <= 4 * c_d * eps**(-2*lam) * prod_j (1 + 2*A_lam*omega**(lam*a_j)),

with c_d = 1 (general) or c_d = d (Korobov).  All products are evaluated in
log space; values beyond 2**62 come back as a float('inf') sentinel instead
of saturating silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapExceededError, SummationCapError
from .lattice import next_prime
from .space import DEFAULT_TOL, WeightModel, a_lambda
from .search import search_korobov

# Geometric lambda grid 1, 1/2, ..., 2**-20; a golden-section refinement
# around the grid minimum sharpens minimized bounds reproducibly.
LAMBDA_GRID = tuple(0.5**k for k in range(21))

_OVERFLOW_LOG = 62.0 * math.log(2.0)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

VARIANTS = ("general", "korobov")


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: its lambda, ingredients, and value."""

    lam: float
    a_lam: float
    product_term: float
    bound_value: float
    variant: str

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "a_lambda": self.a_lam,
            "product_term": self.product_term,
            "bound_value": self.bound_value,
            "variant": self.variant,
        }


def log_product_bound(d: int, lam: float, model: WeightModel, tol: float = DEFAULT_TOL) -> float:
    """log of prod_{j<=d} (1 + 2 * A_lam * omega**(lam * a_j))."""
    a_lam = a_lambda(lam, model, tol)
    return math.fsum(
        math.log1p(2.0 * a_lam * model.omega ** (lam * model.a_j(j)))
        for j in range(1, d + 1)
    )


def product_bound(d: int, lam: float, model: WeightModel, tol: float = DEFAULT_TOL) -> float:
    """prod_{j<=d} (1 + 2*A_lam*omega**(lam*a_j)); inf sentinel on overflow."""
    log_val = log_product_bound(d, lam, model, tol)
    return math.inf if log_val > _OVERFLOW_LOG else math.exp(log_val)


def error_bound(
    n: int,
    d: int,
    lam: float,
    model: WeightModel,
    variant: str = "korobov",
    tol: float = DEFAULT_TOL,
) -> float:
    """The existence bound on the minimal worst-case error at one lambda.

    variant='general' uses c = 1; variant='korobov' uses c = d - 1 for
    d >= 2.  At d = 1 the Korobov factor d - 1 degenerates to zero, so the
    general-vector bound is used there (in d = 1 all Korobov vectors are
    (1), whose error equals the general minimum by scalar invariance).
    """
    _check_variant(variant)
    c = 1.0 if variant == "general" or d == 1 else float(d - 1)
    log_val = (math.log(c / n) + log_product_bound(d, lam, model, tol)) / (2.0 * lam)
    return math.inf if log_val > 700.0 else math.exp(log_val)


def _minimize_lambda(fn, refine_iters: int = 32):
    """Minimize fn over the lambda grid plus golden-section refinement.

    fn may raise SummationCapError for lambdas it cannot certify; those
    grid points are skipped (the remaining ones still give a valid upper
    bound).  Returns (best_value, best_lambda).
    """
    evaluated: dict[float, float] = {}

    def probe(lam: float) -> float:
        if lam not in evaluated:
            try:
                evaluated[lam] = fn(lam)
            except SummationCapError:
                evaluated[lam] = math.inf
        return evaluated[lam]

    grid_vals = [(probe(lam), lam) for lam in LAMBDA_GRID]
    finite = [(v, lam) for v, lam in grid_vals if math.isfinite(v)]
    if not finite:
        return math.inf, grid_vals[0][1]
    _, lam_mid = min(finite, key=lambda pair: (pair[0], -pair[1]))
    idx = LAMBDA_GRID.index(lam_mid)
    hi = LAMBDA_GRID[idx - 1] if idx > 0 else lam_mid
    lo = LAMBDA_GRID[idx + 1] if idx + 1 < len(LAMBDA_GRID) else lam_mid
    for _ in range(refine_iters):
        if hi - lo < 1e-12:
            break
        m1 = hi - _GOLDEN * (hi - lo)
        m2 = lo + _GOLDEN * (hi - lo)
        if probe(m1) <= probe(m2):
            hi = m2
        else:
            lo = m1
    best_val, best_lam = min(
        ((v, lam) for lam, v in evaluated.items()), key=lambda pair: (pair[0], -pair[1])
    )
    return best_val, best_lam


def error_bound_min(
    n: int,
    d: int,
    model: WeightModel,
    variant: str = "korobov",
    tol: float = DEFAULT_TOL,
) -> BoundReport:
    """Smallest error bound over the lambda grid, with its lambda."""
    _check_variant(variant)
    value, lam = _minimize_lambda(lambda l: error_bound(n, d, l, model, variant, tol))
    if math.isfinite(value):
        a_lam = a_lambda(lam, model, tol)
        product = product_bound(d, lam, model, tol)
    else:
        a_lam = math.inf
        product = math.inf
    return BoundReport(
        lam=lam, a_lam=a_lam, product_term=product, bound_value=value, variant=variant
    )


def _log_m(eps: float, d: int, lam: float, model: WeightModel, variant: str, tol: float) -> float:
    c_d = 1.0 if variant == "general" else float(d)
    return (
        math.log(c_d)
        + 2.0 * lam * math.log(1.0 / eps)
        + log_product_bound(d, lam, model, tol)
    )


def m_lambda(
    eps: float,
    d: int,
    lam: float,
    model: WeightModel,
    variant: str = "korobov",
    tol: float = DEFAULT_TOL,
) -> float:
    """Modulus threshold ceil(c_d * eps**(-2*lam) * product term).

    Any prime N >= M_lam (e.g. next_prime(M_lam) < 2*M_lam by Bertrand's
    postulate) admits a rule with error <= eps.  Returns a float('inf')
    sentinel when the value would exceed 2**62.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    _check_variant(variant)
    log_m = _log_m(eps, d, lam, model, variant, tol)
    if log_m > _OVERFLOW_LOG:
        return math.inf
    return math.ceil(math.exp(log_m))


def log_info_complexity_bound(
    eps: float,
    d: int,
    model: WeightModel,
    variant: str = "korobov",
    tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """log of the minimized information-complexity bound, with its lambda.

    Stays finite where the exponentiated count would overflow the 2**62
    sentinel threshold; ratio diagnostics are computed from this form.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    _check_variant(variant)

    def log_bound(lam: float) -> float:
        return math.log(4.0) + _log_m(eps, d, lam, model, variant, tol)

    return _minimize_lambda(log_bound)


def info_complexity_bound(
    eps: float,
    d: int,
    model: WeightModel,
    variant: str = "korobov",
    tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """Smallest 4 * c_d * eps**(-2*lam) * product term over the lambda grid.

    Returns (bound, lambda_star); the bound is an integer, or the
    float('inf') sentinel when it would exceed 2**62.
    """
    log_val, lam = log_info_complexity_bound(eps, d, model, variant, tol)
    if log_val > _OVERFLOW_LOG:
        return math.inf, lam
    return math.ceil(math.exp(log_val)), lam


def info_complexity_bound_expform(
    eps: float,
    d: int,
    model: WeightModel,
    lam: float,
    tol: float = DEFAULT_TOL,
) -> float:
    """The weaker exponential-form bound 4*eps**(-2*lam)*exp(2*A_lam*S_lam(d)).

    S_lam(d) = sum_{j<=d} omega**(lam*a_j).  Since 1 + x <= exp(x), this
    always dominates the product-form bound at the same lambda (general
    variant); useful for growth-rate classification.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    a_lam = a_lambda(lam, model, tol)
    s = math.fsum(model.omega ** (lam * model.a_j(j)) for j in range(1, d + 1))
    log_val = math.log(4.0) + 2.0 * lam * math.log(1.0 / eps) + 2.0 * a_lam * s
    return math.inf if log_val > _OVERFLOW_LOG else math.exp(log_val)


def empirical_info_complexity(
    eps: float,
    d: int,
    model: WeightModel,
    tol: float = DEFAULT_TOL,
    n_cap: int = 100_000,
) -> int:
    """Smallest prime N whose best Korobov rule reaches error <= eps.

    Scans primes in increasing order so the returned modulus is the true
    minimum over all primes below the first feasible one (the error is not
    guaranteed monotone along primes, which rules out plain bisection).
    The restriction to Korobov rules makes this an upper bound on the true
    information complexity.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    n = 2
    while n <= n_cap:
        if search_korobov(n, d, model, tol).best_e2.e <= eps:
            return n
        n = next_prime(n + 1)
    raise CapExceededError(f"no feasible prime modulus below the cap {n_cap}")
