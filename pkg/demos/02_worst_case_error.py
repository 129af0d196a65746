"""Worst-case error of a lattice rule, computed three independent ways.

The squared worst-case error equals the Fourier mass on the dual lattice
(frequencies h with h . g == 0 mod N).  Character orthogonality turns the
same quantity into a length-N sum of theta products, and the reproducing
kernel gives it as a double sum over point pairs.  The three evaluators
agree to within their certified truncation bounds, which is the package's
main internal consistency check.
"""

from korobov import (
    KorobovParam,
    LatticeRule,
    WeightFamily,
    WeightModel,
    korobov_vector,
    wce2_dual_enum,
    wce2_kernel_double_sum,
    wce2_theta_product,
)

model = WeightModel(
    omega=0.5,
    a=WeightFamily("linear", kappa=1.0),
    b=WeightFamily("constant", kappa=1.0),
)

rule = LatticeRule(n=13, g=(1, 5, 8))
print("rule: N =", rule.n, " g =", rule.g)
print("first points:")
for row in rule.points()[:4]:
    print("  ", row)

for evaluate in (wce2_theta_product, wce2_dual_enum):
    est = evaluate(rule, model)
    print(f"{est.method:>18}: e2 = {est.value:.15e}  (trunc bound {est.trunc_bound:.1e})")
est = wce2_kernel_double_sum(rule, model)
print(f"{est.method:>18}: e2 = {est.value:.15e}  (trunc bound {est.trunc_bound:.1e})")
print("worst-case error e =", est.e)

# Invariances of the dual lattice: scaling g by any unit mod N, or negating
# a coordinate, leaves the error unchanged.
scaled = LatticeRule(13, tuple(7 * v % 13 for v in rule.g))
print("\nscaled by 7 :", wce2_theta_product(scaled, model).value)
negated = LatticeRule(13, (rule.g[0], 13 - rule.g[1], rule.g[2]))
print("negated g_2 :", wce2_theta_product(negated, model).value)

# Korobov rules: one scalar generates the whole vector (1, g, g^2, ...).
kor = korobov_vector(KorobovParam(n=13, g=5, d=3))
refl = korobov_vector(KorobovParam(n=13, g=8, d=3))  # 8 = 13 - 5
print("\nKorobov g=5 :", wce2_theta_product(kor, model).value)
print("Korobov g=8 :", wce2_theta_product(refl, model).value, "(reflection, same error)")
