import math

import numpy as np
import pytest

from korobov import (
    LAMBDA_GRID,
    CapExceededError,
    empirical_info_complexity,
    error_bound,
    error_bound_min,
    info_complexity_bound,
    info_complexity_bound_expform,
    m_lambda,
    next_prime,
    product_bound,
    search_korobov,
    wce2_theta_product,
    LatticeRule,
)

from conftest import make_model


def test_product_bound_geometric(unit_model):
    # A_1 = 2, factor = 1 + 2*2*0.5 = 3
    assert product_bound(1, 1.0, unit_model) == pytest.approx(3.0, abs=1e-12)


def test_product_bound_at_least_one(linear_model):
    for d in (1, 3, 10):
        for lam in (1.0, 0.25, 2.0**-20):
            assert product_bound(d, lam, linear_model) >= 1.0


def test_product_bound_dominates_full_dual_sum():
    # box-enumerated sum over all nonzero h against the product majorant
    for d in (1, 2, 3):
        model = make_model(a=("linear", 1.0))
        axes = [np.arange(-40, 41)] * d
        grids = np.meshgrid(*axes, indexing="ij")
        h = np.stack([g.ravel() for g in grids], axis=1).astype(float)
        expo = np.zeros(h.shape[0])
        for j in range(d):
            expo += (j + 1) * np.abs(h[:, j])
        total = float(np.sum(0.5**expo)) - 1.0  # drop h = 0
        assert total <= product_bound(d, 1.0, model) + 1e-9


def test_product_bound_overflow_sentinel():
    model = make_model(omega=0.9, a=("constant", 0.1))
    assert product_bound(500, 1.0, model) == math.inf


def test_error_bound_closed_form(unit_model):
    # d=2, n=3: ((d-1)/n * 3 * 3) ** 0.5 = sqrt(3)
    got = error_bound(3, 2, 1.0, unit_model, "korobov")
    assert got == pytest.approx(math.sqrt(3.0), abs=1e-12)


def test_error_bound_min_no_worse_than_lambda_one(linear_model):
    rep = error_bound_min(13, 2, linear_model, "korobov")
    assert rep.bound_value <= error_bound(13, 2, 1.0, linear_model, "korobov") + 1e-12
    assert 0.0 < rep.lam <= 1.0


def test_error_bound_nonincreasing_in_n(linear_model):
    vals = [error_bound(n, 2, 0.5, linear_model, "korobov") for n in (5, 13, 31, 101)]
    assert vals == sorted(vals, reverse=True)


def test_error_bound_d1_korobov_falls_back_to_general(unit_model):
    assert error_bound(5, 1, 1.0, unit_model, "korobov") == pytest.approx(
        error_bound(5, 1, 1.0, unit_model, "general"), abs=1e-15
    )


def test_m_lambda_example(unit_model):
    # product term 3, eps=1/2, lam=1: ceil(1 * 4 * 3) = 12 -> next prime 13
    m = m_lambda(0.5, 1, 1.0, unit_model, "general")
    assert m == 12
    assert next_prime(m) == 13


def test_m_lambda_monotone_in_eps(linear_model):
    ms = [m_lambda(eps, 2, 0.5, linear_model, "korobov") for eps in (0.9, 0.5, 0.1, 0.01)]
    assert ms == sorted(ms)


def test_m_lambda_overflow_sentinel():
    model = make_model(omega=0.9, a=("constant", 0.1))
    assert m_lambda(1e-6, 400, 1.0, model, "korobov") == math.inf


def test_info_complexity_bound_example(unit_model):
    # lam = 1 candidate value: 4 * 1 * 4 * 3 = 48; grid minimum can only improve
    bound, lam_star = info_complexity_bound(0.5, 1, unit_model, "general")
    assert bound <= 48
    assert bound >= 1
    assert 0.0 < lam_star <= 1.0


def test_bertrand_sandwich_on_m_grid(linear_model):
    for eps in (0.3, 0.1):
        for d in (1, 2, 3):
            m = m_lambda(eps, d, 0.5, linear_model, "korobov")
            n = next_prime(int(m))
            assert m <= n < 2 * m


def test_bound_chain(linear_model):
    # empirical <= 2 * M_lambda* <= product-form bound at lambda*
    for eps in (0.5, 0.3):
        for d in (1, 2):
            bound, lam_star = info_complexity_bound(eps, d, linear_model, "korobov")
            m = m_lambda(eps, d, lam_star, linear_model, "korobov")
            emp = empirical_info_complexity(eps, d, linear_model)
            assert emp <= 2 * m <= bound


def test_empirical_info_complexity_small_cases(unit_model):
    # d=1: all Korobov vectors are (1); e(2) = 0.8165, e(3) = 0.5345
    e2 = wce2_theta_product(LatticeRule(2, (1,)), unit_model).e
    e3 = wce2_theta_product(LatticeRule(3, (1,)), unit_model).e
    assert e2 == pytest.approx(0.8164965809277260, abs=1e-12)
    assert e3 == pytest.approx(0.5345224838248488, abs=1e-12)
    assert empirical_info_complexity(0.9, 1, unit_model) == 2
    assert empirical_info_complexity(0.6, 1, unit_model) == 3


def test_empirical_monotone_in_eps(linear_model):
    ns = [empirical_info_complexity(eps, 2, linear_model) for eps in (0.7, 0.4, 0.2)]
    assert ns == sorted(ns)


def test_empirical_cap():
    with pytest.raises(CapExceededError):
        empirical_info_complexity(1e-3, 2, make_model(), n_cap=5)


def test_expform_dominates_product_form(linear_model):
    for d in (2, 8, 32):
        bound, lam = info_complexity_bound(1e-2, d, linear_model, "general")
        assert bound <= info_complexity_bound_expform(1e-2, d, linear_model, lam)


def test_search_error_below_bound_all_grid(linear_model):
    best = search_korobov(13, 2, linear_model).best_e2.e
    for lam in LAMBDA_GRID:
        assert best <= error_bound(13, 2, lam, linear_model, "korobov") + 1e-12
