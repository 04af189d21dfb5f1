import math

import numpy as np
import pytest

import konus


def two_period():
    return konus.TradeStatistics([[1.0, 2.0], [2.0, 1.0]], [[1.0, 1.0], [2.0, 1.0]])


def test_statistics_roundtrip():
    ts = two_period()
    assert (ts.periods, ts.goods) == (2, 2)
    assert ts.good_ids == ["g1", "g2"]
    np.testing.assert_array_equal(ts.cross_values(), [[3.0, 4.0], [3.0, 5.0]])
    np.testing.assert_allclose(np.diag(ts.paasche()), [1.0, 1.0])


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        konus.TradeStatistics([[1.0, -2.0]], [[1.0, 1.0]])
    with pytest.raises(ValueError):
        konus.TradeStatistics([1.0, 2.0], [[1.0, 1.0]])


def test_two_period_violation_and_indices():
    ts = two_period()
    harp = konus.check_harp(ts)
    assert not harp["satisfied"]
    assert harp["cycle"] == [0, 1]
    assert konus.check_garp(ts)["satisfied"]
    garp = konus.check_garp(ts, 0.7)
    assert not garp["satisfied"]
    assert garp["chain"] == [0, 1]
    assert konus.harp_irrationality(ts) == pytest.approx(math.sqrt(1.25), abs=1e-12)
    value, attained = konus.garp_irrationality(ts)
    assert value == pytest.approx(0.75, abs=1e-12)
    assert not attained
    with pytest.raises(konus.HarpViolation):
        konus.harp_multipliers(ts)


def test_counterexample_fixture():
    ts = konus.counterexample_statistics(0.0)
    assert konus.check_harp(ts)["satisfied"]
    assert konus.check_garp(ts)["satisfied"]
    lam = konus.harp_multipliers(ts)
    assert lam[0] == 1.0
    consumption, price = konus.konus_divisia(ts)
    expenditure = np.einsum("tg,tg->t", ts.prices, ts.quantities)
    np.testing.assert_allclose(np.multiply(consumption, price), expenditure, rtol=1e-15)
    assert price[0] == 1.0
    assert not konus.kh_membership(ts, [1, 1, 1], [0.5, 1.0, 0.5])
    assert konus.kh_membership(ts, [1, 1, 1], [2.0, 0.0, 0.0])


def test_afriat_numbers_on_consistent_data():
    ts = konus.synthetic_statistics(6, 4, "ces", 3)
    utility, lam = konus.afriat_numbers(ts)
    assert len(utility) == len(lam) == 6
    assert min(lam) > 0


def test_monte_carlo_is_worker_independent():
    ts = konus.synthetic_statistics(8, 5, "ces", 5)
    one = konus.forecast_size(ts, 500, 42, 1)
    four = konus.forecast_size(ts, 500, 42, 4)
    assert one == four
    assert one["harp_hits"] <= one["garp_hits"]
    power = konus.power_estimate(ts, 200, 7, 2)
    assert power["rejections_h"] >= power["rejections_g"]


def test_hierarchy_root_first():
    ts = konus.counterexample_statistics(0.5)
    tree = '{"name": "all", "children": [{"name": "pair", "goods": [0, 2]}], "passthrough": [1]}'
    nodes = konus.hierarchy(ts, tree)
    assert nodes[0]["name"] == "all"
    assert nodes[0]["parent"] is None
    assert nodes[1]["name"] == "pair"
    assert nodes[1]["harp_pass"]


def test_fit_ar_white_noise():
    rng = np.random.default_rng(0)
    model = konus.fit_ar(list(0.01 + 0.05 * rng.standard_normal(400)))
    assert model["order"] in (0, 1, 2)
    assert len(model["beta"]) == model["order"] + 1
