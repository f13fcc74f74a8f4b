"""RSSI distance estimation against a 1-meter calibrated power.

The chain: the dBm difference between calibrated power and measured RSSI
is a power ratio in dB; converting to a linear ratio and applying the
free-space 1/r^2 fall-off gives distance as the square root of that
ratio. All functions are pure; the inverse (rssi_at_distance) is what the
simulated radio world emits.

Caveats like body attenuation, uneven antenna gain or reflections that
slow the decay below 1/r^2 are real but carry no equations here; the
simulator's path-loss exponent knob is the only mismatch model offered.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

TYPICAL_DBM_RANGE = (-120.0, 0.0)


class AtypicalPowerWarning(UserWarning):
    """A dBm value outside the plausible radio range; not an error."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class RangingSample:
    """One (calibrated power, measured RSSI) pair, both dBm."""

    tx_power_1m: float
    rssi: float

    def __post_init__(self):
        for name in ("tx_power_1m", "rssi"):
            value = _require_finite(name, getattr(self, name))
            lo, hi = TYPICAL_DBM_RANGE
            if not lo <= value <= hi:
                warnings.warn(
                    f"{name}={value} dBm outside typical range [{lo}, {hi}]",
                    AtypicalPowerWarning,
                    stacklevel=3,
                )

    def estimate(self) -> "DistanceEstimate":
        return estimate_distance(self.tx_power_1m, self.rssi)


@dataclass(frozen=True)
class DistanceEstimate:
    meters: float
    dbm_ratio: float
    linear_ratio: float


def dbm_ratio(r1: float, r2: float) -> float:
    """Power ratio of two dBm readings, which is just their difference in dB."""
    return _require_finite("r1", r1) - _require_finite("r2", r2)


def linear_ratio(db: float) -> float:
    """dB value as a plain ratio: 10^(db/10)."""
    return 10.0 ** (_require_finite("db", db) / 10.0)


def estimate_distance(tx_power_1m: float, rssi: float) -> DistanceEstimate:
    """Distance in meters from calibrated power and measured RSSI.

    sqrt(10^((tx_power_1m - rssi) / 10)): equal powers mean the 1-meter
    calibration point; each 20 dB of loss is a decade of distance.
    """
    db = dbm_ratio(tx_power_1m, rssi)
    ratio = linear_ratio(db)
    return DistanceEstimate(meters=math.sqrt(ratio), dbm_ratio=db, linear_ratio=ratio)


def rssi_at_distance(tx_power_1m: float, r: float) -> float:
    """Expected RSSI at distance r under the free-space law (inverse model)."""
    tx = _require_finite("tx_power_1m", tx_power_1m)
    r = _require_finite("r", r)
    if r <= 0:
        raise ValueError(f"distance must be > 0, got {r}")
    return tx - 20.0 * math.log10(r)
