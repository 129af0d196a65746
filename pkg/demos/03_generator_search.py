"""Exhaustive generator searches and the existence bounds they verify.

Averaging the error over all generators shows that a good one exists: the
minimum is below [(c/N) * prod_j (1 + 2 A_lam omega**(lam a_j))]**(1/(2 lam))
for every lambda in (0, 1], with c = 1 over all vectors and c = d - 1 over
the one-parameter Korobov family.  Inverting the bound picks a prime N
large enough for a target accuracy; the search then confirms it.
"""

from korobov import (
    WeightFamily,
    WeightModel,
    error_bound,
    error_bound_min,
    m_lambda,
    mean_pow_error,
    next_prime,
    search_general,
    search_korobov,
)

model = WeightModel(
    omega=0.5,
    a=WeightFamily("linear", kappa=1.0),
    b=WeightFamily("constant", kappa=1.0),
)

# Korobov search: N candidates instead of N^d.
res = search_korobov(31, 2, model)
print("Korobov search N=31, d=2:")
print("  best g =", res.best_rule.g, " e =", res.best_e2.e)
print("  evaluated =", res.evaluated, " ties =", res.ties)

# The tiny general search agrees with (or beats) the Korobov minimum.
gen = search_general(31, 2, model)
print("general search best:", gen.best_rule.g, " e =", gen.best_e2.e)

# The existence bound dominates the found minimum at every lambda.
for lam in (1.0, 0.5, 0.25):
    print(f"  bound at lambda={lam}: {error_bound(31, 2, lam, model, 'korobov'):.6f}")
best = error_bound_min(31, 2, model, "korobov")
print(f"  minimized bound: {best.bound_value:.6f} at lambda = {best.lam:.4f}")

# The averaging inequality itself, verified literally: the family mean of the
# lambda-scaled dual sums is below (d-1)/N (Korobov) or 1/N (general) times
# the product term.
mean_k = mean_pow_error(31, 2, 0.5, model, family="korobov")
print("\nKorobov family mean (lambda=1/2):", mean_k)

# Prime selection for a target accuracy: choose N >= M_lambda, search, done.
eps = 0.05
m = m_lambda(eps, 2, 0.5, model, "korobov")
n = next_prime(int(m))
found = search_korobov(n, 2, model)
print(f"\ntarget eps = {eps}: M = {m}, prime N = {n}")
print(f"  searched error e = {found.best_e2.e:.3e} <= {eps}")
