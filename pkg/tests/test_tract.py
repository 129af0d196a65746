import json
import math
import pathlib

import pytest

from korobov import alg_classify, st_ratio_trace, wt_ratio_trace

from conftest import make_model

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load_grid(name):
    return json.loads((FIXTURES / "tract_grids.json").read_text())[name]


def test_st_reduces_to_wt(linear_model):
    grid = load_grid("small")
    wt = wt_ratio_trace(grid["d"], grid["eps"], linear_model, source="bound")
    st = st_ratio_trace(1.0, 1.0, grid["d"], grid["eps"], linear_model, source="bound")
    assert wt.records == st.records
    assert wt.mode == "exp_wt"


def test_records_sorted_positive_finite(linear_model):
    trace = wt_ratio_trace([2, 1], [0.5, 0.1], linear_model, source="bound")
    keys = [(r.d, r.epsilon) for r in trace.records]
    assert keys == sorted(keys)
    for r in trace.records:
        assert r.n_value >= 2
        assert 0.0 < r.ratio < math.inf


def test_empirical_below_bound_per_record(linear_model):
    grid = load_grid("small")
    emp = wt_ratio_trace(grid["d"], grid["eps"], linear_model, source="empirical")
    bnd = wt_ratio_trace(grid["d"], grid["eps"], linear_model, source="bound")
    for re, rb in zip(emp.records, bnd.records):
        assert (re.d, re.epsilon) == (rb.d, rb.epsilon)
        assert re.n_value <= rb.n_value


def test_t_below_one_rejected(linear_model):
    with pytest.raises(ValueError):
        st_ratio_trace(1.0, 0.5, [2], [0.1], linear_model)


def test_st_s2_decreasing_for_constant_weights():
    # s > 1 needs no weight growth at all
    model = make_model()
    trace = st_ratio_trace(2.0, 1.0, [4, 8, 16, 32], [1e-3], model, source="bound")
    ratios = [r.ratio for r in trace.records]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_st_s_half_decreasing_for_superlog_weights():
    # a_j = j**0.5 has a_j / log j -> infinity, enough for s < 1; the decay
    # sets in once the weight sum saturates, hence the larger d grid
    model = make_model(a=("power", 1.0, 0.5))
    trace = st_ratio_trace(0.5, 1.0, [16, 64, 256, 1024], [1e-3], model, source="bound")
    ratios = [r.ratio for r in trace.records]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_partial_sums_monotone(linear_model):
    report = alg_classify(linear_model, d_max=64)
    sums = report["partial_sums"]
    for lam, rows in sums.items():
        vals = [s for _, s in rows]
        assert vals == sorted(vals)  # nondecreasing in d
    # nonincreasing in lambda at fixed d
    d_idx = 2
    by_lam = sorted(sums.items())
    for (lam1, rows1), (lam2, rows2) in zip(by_lam, by_lam[1:]):
        assert rows1[d_idx][1] >= rows2[d_idx][1] - 1e-12


def test_alg_classify_logarithmic_exact_exponent():
    # kappa * log(1/omega) = 2 with omega = 1/e, kappa = 2: bound exactly 1.0
    model = make_model(omega=math.exp(-1.0), a=("logarithmic", 2.0))
    report = alg_classify(model, d_max=64)
    assert report["a_log_limit"] == pytest.approx(2.0)
    assert report["spt_eps_exponent_bound"] == 1.0


def test_alg_classify_constant_capped_at_two(unit_model):
    report = alg_classify(unit_model, d_max=64)
    assert report["a_log_limit"] == 0.0
    assert report["spt_eps_exponent_bound"] == 2.0
    assert report["growth"]["empirical_class"] == "linear"


def test_alg_classify_linear_weights_bounded(linear_model):
    report = alg_classify(linear_model, d_max=256)
    assert report["a_log_limit"] == math.inf
    assert report["spt_eps_exponent_bound"] == 0.0
    assert report["growth"]["empirical_class"] == "bounded"
    assert report["growth"]["closed_form_class"] == "bounded"
    assert report["growth"]["alg_tractability_class"] == "alg_polynomial"
    assert "disclaimer" in report


def test_alg_classify_borderline_logarithmic():
    # kappa * log(1/omega) = 1: terms (j+1)^-1, S_1(d) ~ log d
    model = make_model(omega=math.exp(-1.0), a=("logarithmic", 1.0))
    report = alg_classify(model, d_max=1024)
    assert report["growth"]["empirical_class"] == "logarithmic"
    assert report["growth"]["closed_form_class"] == "logarithmic"


def test_alg_classify_slow_logarithmic_polynomial_growth():
    # kappa * log(1/omega) = 0.5: S_1(d) ~ d^{1/2}
    model = make_model(omega=math.exp(-0.5), a=("logarithmic", 1.0))
    report = alg_classify(model, d_max=1024)
    assert report["growth"]["closed_form_class"].startswith("polynomial")
    assert report["growth"]["empirical_class"].startswith("polynomial")
