"""Rank-1 lattice point sets and prime-modulus utilities.

A rule is a prime modulus N together with a generating vector g in
G_N^d = {0, ..., N-1}^d; its node set is x_k = {(k/N) * g}, k = 0..N-1.
Korobov rules use the one-parameter vectors (1, g, g^2, ..., g^(d-1)) mod N.
All modular arithmetic is exact: coordinates are kept as integer numerators
until a single final division, so point sets are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Products k * g_j must fit into int64, so moduli are capped at 2**31.
MODULUS_CAP = 2**31

# Deterministic Miller-Rabin witness set, valid for all 64-bit integers.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(m: int) -> int:
    """Smallest prime >= m; guaranteed < 2*m by Bertrand's postulate."""
    if m < 2:
        raise ValueError(f"next_prime requires m >= 2, got {m}")
    n = m
    while not is_prime(n):
        n += 1
    assert n < 2 * m, "Bertrand's postulate violated (impossible for correct primality)"
    return n


@dataclass(frozen=True)
class LatticeRule:
    """Prime modulus ``n`` and generating vector ``g`` with 0 <= g_j < n."""

    n: int
    g: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", tuple(int(v) for v in self.g))
        if self.n > MODULUS_CAP:
            raise ValueError(f"modulus {self.n} exceeds the cap {MODULUS_CAP}")
        if not is_prime(self.n):
            raise ValueError(f"modulus must be prime, got {self.n}")
        if len(self.g) < 1:
            raise ValueError("generating vector must have dimension >= 1")
        if any(not (0 <= v < self.n) for v in self.g):
            raise ValueError("generating vector entries must lie in {0, ..., n-1}")

    @property
    def d(self) -> int:
        return len(self.g)

    def points(self) -> np.ndarray:
        """The N node vectors {(k/N) g} as an (N, d) float array.

        Numerators (k * g_j) mod N are computed exactly in int64 before the
        single final division by N.
        """
        k = np.arange(self.n, dtype=np.int64)[:, None]
        g = np.asarray(self.g, dtype=np.int64)[None, :]
        return (k * g % self.n) / float(self.n)

    def to_dict(self) -> dict:
        return {"n": self.n, "g": list(self.g)}

    @classmethod
    def from_dict(cls, data: dict) -> "LatticeRule":
        unknown = set(data) - {"n", "g"}
        if unknown:
            raise ValueError(f"unknown fields {sorted(unknown)} in lattice rule")
        return cls(n=int(data["n"]), g=tuple(int(v) for v in data["g"]))


@dataclass(frozen=True)
class KorobovParam:
    """Scalar Korobov parameter expanding to (1, g, g^2, ..., g^(d-1)) mod n."""

    n: int
    g: int
    d: int

    def __post_init__(self) -> None:
        if self.n > MODULUS_CAP:
            raise ValueError(f"modulus {self.n} exceeds the cap {MODULUS_CAP}")
        if not is_prime(self.n):
            raise ValueError(f"modulus must be prime, got {self.n}")
        if not (0 <= self.g < self.n):
            raise ValueError(f"scalar generator must lie in {{0, ..., n-1}}, got {self.g}")
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")

    def to_dict(self) -> dict:
        return {"n": self.n, "g_scalar": self.g, "d": self.d}

    @classmethod
    def from_dict(cls, data: dict) -> "KorobovParam":
        unknown = set(data) - {"n", "g_scalar", "d"}
        if unknown:
            raise ValueError(f"unknown fields {sorted(unknown)} in Korobov parameter")
        return cls(n=int(data["n"]), g=int(data["g_scalar"]), d=int(data["d"]))


def korobov_vector(param: KorobovParam) -> LatticeRule:
    """Expand a scalar Korobov parameter into its lattice rule.

    Components are g^(j-1) mod n via repeated modular multiplication; the
    first component is always 1 (also for g = 0).
    """
    comps = []
    power = 1
    for _ in range(param.d):
        comps.append(power)
        power = power * param.g % param.n
    return LatticeRule(n=param.n, g=tuple(comps))
