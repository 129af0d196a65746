"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Expected values are either closed-form, produced by the independent
brute-force oracles in conftest, or monotonicity/dominance patterns; no
asserted number is taken from the implementation path it checks.
"""

import json
import math
import pathlib
import time

import numpy as np

from korobov import (
    LAMBDA_GRID,
    LatticeRule,
    WeightFamily,
    WeightModel,
    a_lambda,
    alg_classify,
    convergence_study,
    dual_enum_work_estimate,
    dual_witness,
    error_bound,
    error_vs_wce,
    exact_qmc_error,
    is_prime,
    korobov_vector,
    KorobovParam,
    m_lambda,
    mean_pow_error,
    next_prime,
    product_cosine,
    qmc_apply,
    random_sparse,
    search_korobov,
    wce2_dual_enum,
    wce2_kernel_double_sum,
    wce2_theta_product,
    wt_ratio_trace,
)
from korobov.bounds import log_info_complexity_bound

from conftest import make_model

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GRIDS = json.loads((FIXTURES / "tract_grids.json").read_text())


def report(num: int, desc: str, ok: bool, detail: str = "") -> None:
    line = f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {desc}"
    if detail:
        line += f" [{detail}]"
    print(line)
    assert ok, line


# -----------------------------------------------------------------------------
# 1. Three-way error-oracle equivalence on a >= 200 instance corpus
# -----------------------------------------------------------------------------

def _oracle_corpus():
    """Deterministic (model, rule, enum_tol) corpus spanning every axis value.

    The dual-enumeration tolerance is relaxed per instance until the
    estimated work is affordable; instances infeasible even at the loosest
    tolerance (the oracle's documented limitation for slowly decaying
    fractional-exponent cases in higher dimension) are skipped.
    """
    omegas = (0.3, 0.5, 0.9)
    a_fams = (("constant", 1.0), ("linear", 1.0), ("logarithmic", 1.0))
    b_vals = (1.0, 2.0, 0.5)
    moduli = (2, 3, 5, 7, 13, 37)
    corpus = []
    covered = {"omega": set(), "a": set(), "b": set(), "d": set(), "n": set()}
    idx = 0
    for omega in omegas:
        for a_fam in a_fams:
            for b_val in b_vals:
                model = make_model(omega=omega, a=a_fam, b=("constant", b_val))
                for d in (1, 2, 3):
                    for n in moduli:
                        idx += 1
                        if d == 1:
                            g = ((idx % n),)
                        elif idx % 4 == 0:
                            g = tuple(1 + (idx * (j + 1)) % (n - 1) if n > 2 else 1 for j in range(d))
                        else:
                            g = korobov_vector(KorobovParam(n, 1 + idx % max(n - 1, 1), d)).g
                        rule = LatticeRule(n, g)
                        tol_pick = None
                        for tol in (1e-12, 1e-9, 1e-6, 1e-3, 1e-1):
                            if dual_enum_work_estimate(rule, model, 1.0, tol) <= 2e5:
                                tol_pick = tol
                                break
                        if tol_pick is None:
                            continue
                        corpus.append((model, rule, tol_pick))
                        covered["omega"].add(omega)
                        covered["a"].add(a_fam[0])
                        covered["b"].add(b_val)
                        covered["d"].add(d)
                        covered["n"].add(n)
    return corpus, covered


def test_criterion_1_three_way_oracle_equivalence():
    start = time.time()
    corpus, covered = _oracle_corpus()
    ok_cover = (
        covered["omega"] == {0.3, 0.5, 0.9}
        and covered["a"] == {"constant", "linear", "logarithmic"}
        and covered["b"] == {1.0, 2.0, 0.5}
        and covered["d"] == {1, 2, 3}
        and covered["n"] == {2, 3, 5, 7, 13, 37}
    )
    violations = 0
    for model, rule, enum_tol in corpus:
        e_dual = wce2_dual_enum(rule, model, 1.0, enum_tol)
        e_theta = wce2_theta_product(rule, model, 1.0)
        e_double = wce2_kernel_double_sum(rule, model)
        if abs(e_dual.value - e_theta.value) > e_dual.trunc_bound + e_theta.trunc_bound + 1e-10:
            violations += 1
        if abs(e_double.value - e_theta.value) > e_double.trunc_bound + e_theta.trunc_bound + 1e-10:
            violations += 1
    elapsed = time.time() - start
    report(
        1,
        "three-way oracle equivalence",
        len(corpus) >= 200 and ok_cover and violations == 0,
        f"{len(corpus)} instances, {violations} violations, {elapsed:.1f}s",
    )


# -----------------------------------------------------------------------------
# 2. Averaging bound of the existence proof, verified literally
# -----------------------------------------------------------------------------

def test_criterion_2_averaging_bounds():
    start = time.time()
    model = make_model(a=("linear", 1.0))
    violations = []
    for n in (5, 13, 31):
        for d in (2, 3):
            for lam in (1.0, 0.5, 0.25):
                # b = 1: the tail constant is the geometric series 1/(1 - omega^lam)
                a_lam = 1.0 / (1.0 - model.omega**lam)
                prod = 1.0
                for j in range(1, d + 1):
                    prod *= 1.0 + 2.0 * a_lam * model.omega ** (lam * model.a_j(j))
                mean_k = mean_pow_error(n, d, lam, model, family="korobov")
                if mean_k > (d - 1) / n * prod + 1e-10:
                    violations.append(("korobov", n, d, lam))
                if n**d <= 10**6:
                    mean_g = mean_pow_error(n, d, lam, model, family="general")
                    if mean_g > prod / n + 1e-10:
                        violations.append(("general", n, d, lam))
    elapsed = time.time() - start
    report(2, "averaging bounds (korobov and general)", not violations, f"{elapsed:.1f}s")


# -----------------------------------------------------------------------------
# 3. Existence-bound dominance at every grid lambda
# -----------------------------------------------------------------------------

def test_criterion_3_existence_bound_dominance():
    model = make_model(a=("linear", 1.0))
    violations = []
    for n in (5, 13, 31):
        for d in (2, 3):
            best_e = search_korobov(n, d, model).best_e2.e
            for lam in LAMBDA_GRID:
                if best_e > error_bound(n, d, lam, model, "korobov") + 1e-12:
                    violations.append((n, d, lam))
    report(3, "search error below the bound at every grid lambda", not violations)


# -----------------------------------------------------------------------------
# 4. Group-action invariances
# -----------------------------------------------------------------------------

def test_criterion_4_group_action_invariances():
    model = make_model(a=("linear", 1.0))
    rng = np.random.default_rng(20240131)
    primes = [p for p in range(3, 102) if is_prime(p)]
    worst_scalar = 0.0
    worst_reflect = 0.0
    for _ in range(100):
        n = int(rng.choice(primes))
        d = int(rng.integers(1, 4))
        g = tuple(int(v) for v in rng.integers(1, n, size=d))
        c = int(rng.integers(1, n))
        e_base = wce2_theta_product(LatticeRule(n, g), model).value
        e_scaled = wce2_theta_product(
            LatticeRule(n, tuple(c * v % n for v in g)), model
        ).value
        worst_scalar = max(worst_scalar, abs(e_base - e_scaled))
        g0 = int(rng.integers(1, n))
        e_fwd = wce2_theta_product(korobov_vector(KorobovParam(n, g0, d)), model).value
        e_rev = wce2_theta_product(korobov_vector(KorobovParam(n, n - g0, d)), model).value
        worst_reflect = max(worst_reflect, abs(e_fwd - e_rev))
    report(
        4,
        "scalar-multiplication and Korobov-reflection invariance",
        worst_scalar <= 1e-12 and worst_reflect <= 1e-12,
        f"worst diffs {worst_scalar:.2e}, {worst_reflect:.2e}",
    )


# -----------------------------------------------------------------------------
# 5. Existence pipeline end to end
# -----------------------------------------------------------------------------

def test_criterion_5_pipeline_end_to_end():
    start = time.time()
    grid = GRIDS["pipeline"]
    model = make_model(a=("linear", 1.0))
    lam = grid["lambda"]
    checked, skipped, violations = 0, 0, []
    for eps in grid["eps"]:
        for d in grid["d"]:
            m = m_lambda(eps, d, lam, model, "korobov")
            n = next_prime(int(m))
            if n > grid["n_skip_above"]:
                skipped += 1
                continue
            if not n < 2 * m:
                violations.append(("bertrand", eps, d))
            best = search_korobov(n, d, model).best_e2.e
            if not best <= eps:
                violations.append(("error", eps, d, best))
            checked += 1
    elapsed = time.time() - start
    report(
        5,
        "prime selection then search reaches the target error",
        not violations and checked >= 6,
        f"{checked} cells, {skipped} skipped, {elapsed:.0f}s",
    )


# -----------------------------------------------------------------------------
# 6. Integration dominance on the three-part integrand corpus
# -----------------------------------------------------------------------------

def _integrand_corpus():
    model = make_model(a=("linear", 1.0))
    witness_model = make_model(omega=0.3, a=("linear", 1.0))
    rng = np.random.default_rng(77)
    rules = {
        1: [LatticeRule(n, (g,)) for n, g in ((3, 1), (7, 3), (13, 5), (37, 11))],
        2: [LatticeRule(n, g) for n, g in ((5, (1, 2)), (13, (1, 5)), (37, (1, 14)), (13, (3, 7)))],
        3: [LatticeRule(n, g) for n, g in ((7, (1, 2, 3)), (13, (1, 5, 8)), (37, (1, 10, 26)))],
    }
    pairs = []
    for d, rule_list in rules.items():
        for rule in rule_list:
            for amp in (0.2, 0.5, 0.9):
                pairs.append((product_cosine(d, (amp,) * d), rule, model))
            for _ in range(26):
                f = random_sparse(d, model, int(rng.integers(3, 24)), rng)
                pairs.append((f, rule, model))
    for d, rule_list in rules.items():
        if d > 2:
            continue
        for rule in rule_list:
            pairs.append((dual_witness(rule, witness_model), rule, witness_model))
    return pairs


def test_criterion_6_integration_dominance():
    start = time.time()
    pairs = _integrand_corpus()
    identity_bad = 0
    dominance_bad = 0
    best_ratio = 0.0
    for f, rule, model in pairs:
        lhs = qmc_apply(f, rule) - f.integral()
        rhs = exact_qmc_error(f, rule)
        if abs(lhs - rhs) > 1e-12:
            identity_bad += 1
        rep = error_vs_wce(f, rule, model)
        if rep["realized"] > rep["bound_upper"] + 1e-10:
            dominance_bad += 1
        best_ratio = max(best_ratio, rep["ratio"])
    elapsed = time.time() - start
    report(
        6,
        "realized error within wce * norm, exact-error identity",
        len(pairs) >= 300 and identity_bad == 0 and dominance_bad == 0 and best_ratio >= 0.5,
        f"{len(pairs)} pairs, max saturation {best_ratio:.2f}, {elapsed:.1f}s",
    )


# -----------------------------------------------------------------------------
# 7. Super-polynomial decay evidence
# -----------------------------------------------------------------------------

def test_criterion_7_superpolynomial_decay():
    start = time.time()
    results = {}
    for d, p_max in ((1, 503), (2, 199)):
        model = make_model(a=("explicit", (1.0, 2.0)[:d]))
        primes = [p for p in range(2, p_max + 1) if is_prime(p)]
        rows = convergence_study(d, model, primes)
        seq = [r["n4_e"] for r in rows]
        argmax_n = rows[int(np.argmax(seq))]["n"]
        median = primes[len(primes) // 2]
        results[d] = (argmax_n, median, argmax_n < median)
    elapsed = time.time() - start
    ok = all(flag for _, _, flag in results.values())
    report(
        7,
        "N^4 e(N) peaks below the median prime",
        ok,
        "; ".join(
            f"d={d}: argmax N={a} vs median {m} -> {'ok' if f else 'VIOLATION'}"
            for d, (a, m, f) in results.items()
        )
        + f"; {elapsed:.0f}s",
    )


# -----------------------------------------------------------------------------
# 8. Weak-tractability ratio contrast
# -----------------------------------------------------------------------------

def test_criterion_8_wt_ratio_contrast():
    grid = GRIDS["wt_contrast"]
    lin = make_model(a=("linear", 1.0))
    const = make_model(a=("constant", 1.0))
    tr_lin = wt_ratio_trace(grid["d"], grid["eps"], lin, source="bound")
    tr_const = wt_ratio_trace(grid["d"], grid["eps"], const, source="bound")
    r_lin = [r.ratio for r in tr_lin.records]
    r_const = [r.ratio for r in tr_const.records]
    decreasing = all(a > b for a, b in zip(r_lin, r_lin[1:]))
    floored = min(r_const) >= 0.05
    report(
        8,
        "ratio decreasing for growing weights, floored for constant weights",
        decreasing and floored,
        f"linear {r_lin[0]:.3f}->{r_lin[-1]:.3f}, const min {min(r_const):.3f}",
    )


# -----------------------------------------------------------------------------
# 9. Product-form vs exponential-form chain; exact SPT exponent
# -----------------------------------------------------------------------------

def test_criterion_9_remark_chain_and_exponent():
    grid = GRIDS["wt_contrast"]
    eps = grid["eps"][0]
    violations = []
    for model in (make_model(a=("linear", 1.0)), make_model(a=("constant", 1.0))):
        for d in grid["d"]:
            log_prod, lam = log_info_complexity_bound(eps, d, model, "general")
            a_lam = a_lambda(lam, model)
            s = math.fsum(model.omega ** (lam * model.a_j(j)) for j in range(1, d + 1))
            log_exp_form = math.log(4.0) + 2.0 * lam * math.log(1.0 / eps) + 2.0 * a_lam * s
            if log_prod > log_exp_form + 1e-12:
                violations.append((model.a.kind, d))
    spt = alg_classify(
        WeightModel(
            omega=math.exp(-1.0),
            a=WeightFamily("logarithmic", 2.0),
            b=WeightFamily("constant", 1.0),
        ),
        d_max=64,
    )["spt_eps_exponent_bound"]
    report(
        9,
        "product form below exponential form; SPT exponent bound exact",
        not violations and spt == 1.0,
        f"spt bound {spt!r}",
    )
