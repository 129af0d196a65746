"""Weighted Korobov spaces of analytic periodic functions.

A space is determined by a decay base ``omega`` in (0, 1) and two positive
weight sequences ``(a_j)`` and ``(b_j)``.  A frequency vector ``h`` carries
the Fourier mass

    rho(h) = omega ** sum_j a_j * |h_j| ** b_j,

so members of the space are one-periodic and analytic.  The reproducing
kernel factorizes over coordinates into one-dimensional theta series

    theta_j(t) = 1 + 2 * sum_{h >= 1} omega**(lam * a_j * h**b_j) * cos(2*pi*h*t),

and the per-coordinate Fourier mass is controlled by the tail constant

    a_lambda(lam) = sum_{h >= 1} omega**(lam * a_1 * (h**b_star - 1)).

All infinite sums are truncated with a rigorous tail certificate: the
returned value differs from the exact series by at most the requested
tolerance.  A hard cap of 10**7 terms per one-dimensional sum turns
uncertifiable parameter ranges into an explicit error rather than a silent
inaccuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SummationCapError

DEFAULT_TOL = 1e-14

# Hard cap on the number of terms in any one-dimensional series.
SUM_TERM_CAP = 10**7

FAMILY_KINDS = ("constant", "linear", "logarithmic", "power", "explicit")


def _check_tol(tol: float) -> float:
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol}")
    return tol


@dataclass(frozen=True)
class WeightFamily:
    """A rule producing a weight value for every coordinate index j >= 1.

    Supported kinds:

    - ``constant``:     w_j = kappa
    - ``linear``:       w_j = kappa * j
    - ``logarithmic``:  w_j = kappa * log(j + 1)
    - ``power``:        w_j = kappa * j**p
    - ``explicit``:     w_j = values[j - 1] for j <= len(values), constant
                        tail equal to the last listed value beyond.
    """

    kind: str
    kappa: float = 1.0
    p: float = 1.0
    values: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown weight family kind {self.kind!r}")
        if self.kind == "explicit":
            if not self.values:
                raise ValueError("explicit weight family needs a nonempty values list")
            if any(not (v > 0.0) for v in self.values):
                raise ValueError("explicit weight values must be positive")
        else:
            if not (self.kappa > 0.0):
                raise ValueError(f"weight family kappa must be positive, got {self.kappa}")
            if self.kind == "power" and not math.isfinite(self.p):
                raise ValueError("power family exponent must be finite")

    def value(self, j: int) -> float:
        if j < 1:
            raise ValueError(f"coordinate index must be >= 1, got {j}")
        if self.kind == "constant":
            return self.kappa
        if self.kind == "linear":
            return self.kappa * j
        if self.kind == "logarithmic":
            return self.kappa * math.log(j + 1)
        if self.kind == "power":
            return self.kappa * float(j) ** self.p
        return self.values[j - 1] if j <= len(self.values) else self.values[-1]

    def inf_from(self, j0: int) -> float:
        """Infimum of w_j over j >= j0, in closed form."""
        if self.kind == "explicit":
            tail = self.values[j0 - 1 :] if j0 <= len(self.values) else ()
            return min(tail + (self.values[-1],))
        if self.kind == "power" and self.p < 0:
            return 0.0  # decays to zero
        # remaining kinds are nondecreasing in j
        return self.value(j0)

    def is_nondecreasing(self) -> bool:
        if self.kind == "power":
            return self.p >= 0.0
        if self.kind == "explicit":
            return all(x <= y for x, y in zip(self.values, self.values[1:]))
        return True  # constant / linear / logarithmic with kappa > 0

    def to_dict(self) -> dict:
        if self.kind == "explicit":
            return {"kind": self.kind, "values": list(self.values)}
        if self.kind == "power":
            return {"kind": self.kind, "kappa": self.kappa, "p": self.p}
        return {"kind": self.kind, "kappa": self.kappa}

    @classmethod
    def from_dict(cls, data: dict) -> "WeightFamily":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValueError("weight family must be an object with a 'kind' field")
        kind = data["kind"]
        if kind not in FAMILY_KINDS:
            raise ValueError(f"unknown weight family kind {kind!r}")
        allowed = {"explicit": {"kind", "values"}, "power": {"kind", "kappa", "p"}}.get(
            kind, {"kind", "kappa"}
        )
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown fields {sorted(unknown)} in weight family {kind!r}")
        if kind == "explicit":
            return cls(kind=kind, values=tuple(float(v) for v in data["values"]))
        if kind == "power":
            return cls(kind=kind, kappa=float(data["kappa"]), p=float(data["p"]))
        return cls(kind=kind, kappa=float(data["kappa"]))


@dataclass(frozen=True)
class WeightModel:
    """The space parameters: decay base omega and weight sequences a, b.

    ``prefix_a`` / ``prefix_b`` override the families for the first few
    coordinates (value for j <= len(prefix), family rule beyond), which is
    how finitely-perturbed sequences are expressed.

    Invariants enforced at construction:

    - 0 < omega < 1;
    - the combined a-sequence is nondecreasing with a_1 > 0;
    - inf_j b_j > 0 (available in closed form as :attr:`b_star`).
    """

    omega: float
    a: WeightFamily
    b: WeightFamily
    prefix_a: tuple[float, ...] = ()
    prefix_b: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if not (0.0 < self.omega < 1.0):
            raise ValueError(f"omega must lie in (0, 1), got {self.omega}")
        object.__setattr__(self, "prefix_a", tuple(float(v) for v in self.prefix_a))
        object.__setattr__(self, "prefix_b", tuple(float(v) for v in self.prefix_b))
        self._check_a()
        self._check_b()

    def _check_a(self) -> None:
        if not self.a.is_nondecreasing():
            raise ValueError("a-weights must be nondecreasing in j")
        pre = self.prefix_a
        if any(not (v > 0.0) for v in pre):
            raise ValueError("a-weight prefix values must be positive")
        if any(x > y for x, y in zip(pre, pre[1:])):
            raise ValueError("a-weight prefix must be nondecreasing")
        if pre and pre[-1] > self.a.value(len(pre) + 1):
            raise ValueError("a-weight prefix must not exceed the family continuation")
        if not (self.a_j(1) > 0.0):
            raise ValueError("a_1 must be positive")

    def _check_b(self) -> None:
        if any(not (v > 0.0) for v in self.prefix_b):
            raise ValueError("b-weight prefix values must be positive")
        if not (self.b_star > 0.0):
            raise ValueError("inf_j b_j must be positive")

    def a_j(self, j: int) -> float:
        if 1 <= j <= len(self.prefix_a):
            return self.prefix_a[j - 1]
        return self.a.value(j)

    def b_j(self, j: int) -> float:
        if 1 <= j <= len(self.prefix_b):
            return self.prefix_b[j - 1]
        return self.b.value(j)

    @property
    def a_star(self) -> float:
        """inf_j a_j, which equals a_1 by monotonicity."""
        return self.a_j(1)

    @property
    def b_star(self) -> float:
        """inf_j b_j, computed in closed form per family."""
        candidates = list(self.prefix_b)
        candidates.append(self.b.inf_from(len(self.prefix_b) + 1))
        return min(candidates)

    def to_dict(self) -> dict:
        out = {"omega": self.omega, "a": self.a.to_dict(), "b": self.b.to_dict()}
        if self.prefix_a:
            out["prefix_a"] = list(self.prefix_a)
        if self.prefix_b:
            out["prefix_b"] = list(self.prefix_b)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "WeightModel":
        if not isinstance(data, dict):
            raise ValueError("weight model must be a JSON object")
        unknown = set(data) - {"omega", "a", "b", "prefix_a", "prefix_b"}
        if unknown:
            raise ValueError(f"unknown fields {sorted(unknown)} in weight model")
        for key in ("omega", "a", "b"):
            if key not in data:
                raise ValueError(f"weight model is missing field {key!r}")
        return cls(
            omega=float(data["omega"]),
            a=WeightFamily.from_dict(data["a"]),
            b=WeightFamily.from_dict(data["b"]),
            prefix_a=tuple(float(v) for v in data.get("prefix_a", ())),
            prefix_b=tuple(float(v) for v in data.get("prefix_b", ())),
        )


# ---------------------------------------------------------------------------
# Certified summation of sum_{h >= 1} exp(-c * h**b)
# ---------------------------------------------------------------------------

def _tail_bound_b_ge1(c: float, b: float, horizon: int) -> float:
    # h**b - H**b >= h - H for h > H >= 1 and b >= 1, so the tail is
    # dominated by a geometric series with ratio exp(-c).
    q = math.exp(-c)
    return math.exp(-c * float(horizon) ** b) * q / -math.expm1(-c)

def _tail_bound_b_lt1(c: float, b: float, horizon: int) -> float:
    # Dyadic blocks (H_m, 2*H_m], H_m = 2**m * H.  Within a block the
    # increments of h**b are at least b * (2*H_m)**(b-1), giving a geometric
    # bound; H_m * exp(-c*H_m**b) is a crude fallback.  Once consecutive
    # crude bounds shrink by a factor >= 2 the remaining blocks are folded
    # into a single geometric majorant.
    total = 0.0
    hm = float(horizon)
    for _ in range(200):
        lead = math.exp(-c * hm**b)
        crude = hm * lead
        slope = c * b * (2.0 * hm) ** (b - 1.0)
        r = math.exp(-slope)
        geom = lead * r / -math.expm1(-slope) if slope > 0 else math.inf
        ratio = 2.0 * math.exp(-c * hm**b * (2.0**b - 1.0))
        if ratio <= 0.5:
            return total + min(geom, crude) / (1.0 - ratio)
        total += min(geom, crude)
        hm *= 2.0
    return math.inf

def series_tail_bound(c: float, b: float, horizon: int) -> float:
    """Rigorous upper bound on sum_{h > horizon} exp(-c * h**b)."""
    if c <= 0.0 or b <= 0.0:
        raise ValueError("series parameters must satisfy c > 0 and b > 0")
    if b >= 1.0:
        return _tail_bound_b_ge1(c, b, horizon)
    return _tail_bound_b_lt1(c, b, horizon)

def truncation_horizon(c: float, b: float, tol: float, cap: int = SUM_TERM_CAP) -> tuple[int, float]:
    """Smallest practical horizon H with a certified tail below ``tol``.

    Returns ``(H, tail_bound)``.  Raises :class:`SummationCapError` when no
    horizon within the term cap can be certified.
    """
    _check_tol(tol)
    if b >= 1.0:
        q = math.exp(-c)
        target = tol * -math.expm1(-c) / q
        if target >= 1.0:
            horizon = 1
        else:
            horizon = math.ceil((math.log(1.0 / target) / c) ** (1.0 / b))
            horizon = max(horizon, 1)
        if horizon > cap:
            raise SummationCapError(
                f"series needs more than {cap} terms to certify tail < {tol}"
            )
        return horizon, series_tail_bound(c, b, horizon)
    horizon = 16
    while True:
        bound = series_tail_bound(c, b, horizon)
        if bound <= tol:
            return horizon, bound
        if horizon >= cap:
            raise SummationCapError(
                f"series needs more than {cap} terms to certify tail < {tol}"
            )
        horizon = min(horizon * 2, cap)


def theta_terms(
    j: int,
    model: WeightModel,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray, float]:
    """Coefficients w_h = omega**(lam * a_j * h**b_j) for h = 1..H.

    H is chosen so the truncation error of any theta evaluation built from
    these terms, namely 2 * sum_{h > H} w_h, is at most ``tol``.  Returns
    ``(weights, tail)`` with ``2 * tail <= tol``.
    """
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    c = lam * model.a_j(j) * math.log(1.0 / model.omega)
    b = model.b_j(j)
    horizon, tail = truncation_horizon(c, b, tol / 2.0)
    h = np.arange(1, horizon + 1, dtype=np.float64)
    return np.exp(-c * h**b), tail


def theta(
    t: float,
    j: int,
    model: WeightModel,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
) -> float:
    """One-dimensional kernel factor at point difference ``t`` in [0, 1).

    theta(t) = 1 + 2 * sum_{h >= 1} omega**(lam * a_j * h**b_j) * cos(2*pi*h*t),
    evaluated with absolute truncation error <= tol.  The series is even in
    h, so the value is real, maximal at t = 0, and symmetric about t = 1/2.
    """
    w, _ = theta_terms(j, model, lam, tol)
    h = np.arange(1, w.size + 1, dtype=np.float64)
    return 1.0 + 2.0 * float(w @ np.cos((2.0 * math.pi * t) * h))


def a_lambda(lam: float, model: WeightModel, tol: float = DEFAULT_TOL) -> float:
    """Tail constant sum_{h >= 1} omega**(lam * a_star * (h**b_star - 1)).

    The h = 1 term equals 1, so the result is always >= 1.  For b_star = 1
    the series is geometric and is returned in closed form; otherwise it is
    summed with a certified tail below ``tol``.
    """
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    _check_tol(tol)
    b = model.b_star
    c = lam * model.a_star * math.log(1.0 / model.omega)
    if b == 1.0:
        return 1.0 / -math.expm1(-c)
    scale = math.exp(c)  # A = e^c * sum_h exp(-c h^b)
    horizon, _ = truncation_horizon(c, b, tol / scale)
    h = np.arange(1, horizon + 1, dtype=np.float64)
    return float(np.sum(np.exp(-c * (h**b - 1.0))))


def rho(h, model: WeightModel, lam: float = 1.0) -> float:
    """Fourier mass omega**(sum_j lam * a_j * |h_j|**b_j) of frequency h.

    Equals 1 for h = 0 and lies in (0, 1] always; even in each coordinate
    and multiplicative across coordinates.
    """
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    exponent = 0.0
    for idx, hj in enumerate(h):
        exponent += model.a_j(idx + 1) * abs(float(hj)) ** model.b_j(idx + 1)
    return model.omega ** (lam * exponent)


def kernel_with_bound(x, y, model: WeightModel, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Kernel value K(x, y) together with a certified truncation bound.

    The kernel is the product over coordinates of theta at the fractional
    difference.  The bound propagates the per-factor certificates through
    the product using theta_j(0) majorants.
    """
    if len(x) != len(y):
        raise ValueError("points must have equal dimension")
    vals, taus, majors = [], [], []
    for j in range(1, len(x) + 1):
        t = (float(x[j - 1]) - float(y[j - 1])) % 1.0
        w, tail = theta_terms(j, model, 1.0, tol)
        h = np.arange(1, w.size + 1, dtype=np.float64)
        vals.append(1.0 + 2.0 * float(w @ np.cos((2.0 * math.pi * t) * h)))
        taus.append(2.0 * tail)
        majors.append(1.0 + 2.0 * float(np.sum(w)) + 2.0 * tail)
    value = math.prod(vals)
    bound = sum(
        tau * math.prod(m for i, m in enumerate(majors) if i != jdx)
        for jdx, tau in enumerate(taus)
    )
    return value, bound


def kernel(x, y, model: WeightModel, tol: float = DEFAULT_TOL) -> float:
    """Reproducing kernel K(x, y) = prod_j theta_j({x_j - y_j})."""
    return kernel_with_bound(x, y, model, tol)[0]
