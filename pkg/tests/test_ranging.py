"""Distance estimation chain and its algebraic inverse."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdp.ranging import (
    AtypicalPowerWarning,
    RangingSample,
    dbm_ratio,
    estimate_distance,
    linear_ratio,
    rssi_at_distance,
)


def test_dbm_ratio_is_difference():
    assert dbm_ratio(-59, -59) == 0.0
    assert dbm_ratio(-59, -79) == 20.0
    assert dbm_ratio(-59, -53) == -6.0


def test_linear_ratio_values():
    assert linear_ratio(0) == 1.0
    assert linear_ratio(20) == pytest.approx(100.0, rel=1e-12)
    # 10^(-6/10) = 0.251188643150958
    assert linear_ratio(-6) == pytest.approx(0.251188643150958, rel=1e-12)


def test_estimate_distance_calibration_point():
    est = estimate_distance(-59, -59)
    assert est.meters == pytest.approx(1.0, rel=1e-9)
    assert est.dbm_ratio == 0.0
    assert est.linear_ratio == 1.0


def test_estimate_distance_decade():
    est = estimate_distance(-59, -79)
    assert est.meters == pytest.approx(10.0, rel=1e-9)
    assert est.linear_ratio == pytest.approx(100.0, rel=1e-12)


def test_estimate_distance_stronger_than_calibration():
    # sqrt(10^(-0.6)) = 0.5011872336272722
    est = estimate_distance(-59, -53)
    assert est.meters == pytest.approx(0.5011872336272722, rel=1e-12)


def test_estimate_fields_are_consistent():
    est = estimate_distance(-63.5, -71.25)
    assert est.meters == pytest.approx(math.sqrt(est.linear_ratio), rel=1e-12)
    assert est.linear_ratio == pytest.approx(10 ** (est.dbm_ratio / 10), rel=1e-12)
    assert est.meters > 0


def test_rssi_at_distance_values():
    assert rssi_at_distance(-59, 1.0) == pytest.approx(-59.0, abs=1e-12)
    assert rssi_at_distance(-59, 10.0) == pytest.approx(-79.0, rel=1e-12)


def test_rssi_at_distance_rejects_nonpositive():
    with pytest.raises(ValueError):
        rssi_at_distance(-59, 0)
    with pytest.raises(ValueError):
        rssi_at_distance(-59, -3.0)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
def test_nonfinite_inputs_rejected(bad):
    with pytest.raises(ValueError):
        dbm_ratio(bad, -50)
    with pytest.raises(ValueError):
        linear_ratio(bad)
    with pytest.raises(ValueError):
        estimate_distance(-59, bad)
    with pytest.raises(ValueError):
        rssi_at_distance(bad, 2.0)


@settings(max_examples=300, deadline=None)
@given(
    st.floats(min_value=-100, max_value=-20),
    st.floats(min_value=0.01, max_value=1000),
)
def test_round_trip_recovers_distance(tx, r):
    rssi = rssi_at_distance(tx, r)
    assert estimate_distance(tx, rssi).meters == pytest.approx(r, rel=1e-9)


def test_weaker_rssi_means_strictly_farther():
    rng = random.Random(3)
    for _ in range(200):
        tx = rng.uniform(-90, -30)
        strong = rng.uniform(-85, -30)
        weak = strong - rng.uniform(0.1, 30)
        assert estimate_distance(tx, weak).meters > estimate_distance(tx, strong).meters


def test_distance_depends_only_on_power_difference():
    rng = random.Random(4)
    for _ in range(200):
        tx, rssi = rng.uniform(-90, -30), rng.uniform(-100, -30)
        delta = rng.uniform(-40, 40)
        base = estimate_distance(tx, rssi).meters
        shifted = estimate_distance(tx + delta, rssi + delta).meters
        assert shifted == pytest.approx(base, rel=1e-12)


def test_sample_warns_outside_typical_range():
    with pytest.warns(AtypicalPowerWarning):
        RangingSample(tx_power_1m=-59, rssi=17.0)
    sample = RangingSample(tx_power_1m=-59, rssi=-79)
    assert sample.estimate().meters == pytest.approx(10.0, rel=1e-9)


def test_sample_rejects_nonfinite():
    with pytest.raises(ValueError):
        RangingSample(tx_power_1m=float("nan"), rssi=-50)
