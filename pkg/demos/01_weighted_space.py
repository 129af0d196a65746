"""Weight models and the one-dimensional theta series.

The function space is parameterized by a decay base omega in (0, 1) and two
weight sequences: frequency h carries mass omega**sum_j a_j |h_j|**b_j.
Larger a_j make coordinate j cheaper to integrate; b_j shapes how fast the
mass falls off along each axis.
"""

import numpy as np

from korobov import WeightFamily, WeightModel, a_lambda, kernel, rho, theta

# A model with linearly growing weights a_j = j and first-order decay b_j = 1.
model = WeightModel(
    omega=0.5,
    a=WeightFamily("linear", kappa=1.0),
    b=WeightFamily("constant", kappa=1.0),
)
print("a_1..a_4:", [model.a_j(j) for j in range(1, 5)])
print("a_star =", model.a_star, " b_star =", model.b_star)

# rho is the Fourier mass of a frequency vector: 1 at the origin, tiny for
# large frequencies, and even in every coordinate.
for h in [(0, 0), (1, 0), (2, 1), (-2, -1)]:
    print(f"rho{h} =", rho(h, model))

# The kernel factorizes into one-dimensional theta series.  theta peaks at
# t = 0 and is symmetric about t = 1/2; every evaluation carries a certified
# truncation error below the requested tolerance.
ts = np.linspace(0.0, 1.0, 9, endpoint=False)
print("\ntheta_1 on a grid:")
for t in ts:
    print(f"  theta({t:.3f}) = {theta(float(t), 1, model):.12f}")

# The same series at t=0 with geometric weights has a closed form: for
# omega=1/2, a=1, b=1 it is 1 + 2 * (1/2 + 1/4 + ...) = 3.
unit = WeightModel(omega=0.5, a=WeightFamily("constant", 1.0), b=WeightFamily("constant", 1.0))
print("\ngeometric check: theta(0) =", theta(0.0, 1, unit), "(expect 3)")

# The tail constant A_lambda controls per-coordinate mass in all the bounds.
for lam in (1.0, 0.5, 0.25):
    print(f"A_{lam} =", a_lambda(lam, model))

# Kernel values: symmetric, with K(x, x) the product of theta_j(0).
x, y = np.array([0.1, 0.7]), np.array([0.4, 0.2])
print("\nK(x, y) =", kernel(x, y, model))
print("K(y, x) =", kernel(y, x, model))
print("K(x, x) =", kernel(x, x, model), "=", theta(0.0, 1, model) * theta(0.0, 2, model))

# Serialization round-trips through a plain JSON object.
print("\nas JSON:", model.to_dict())
