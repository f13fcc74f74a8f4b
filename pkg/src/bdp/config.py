"""Hub configuration: a flat JSON object with dotted keys.

Recognized keys (all optional):
    storage.path        append-only store log (null/absent = in-memory)
    bloom.m, bloom.k    explicit filter geometry
    bloom.target_fp     derived sizing: desired false-positive rate
    bloom.expected_n    derived sizing: expected key count
    default_tx_power_1m calibrated power applied to queries that omit one
    sim.gamma, sim.noise_sigma, sim.rssi_floor, sim.seed
    sim.world_path      where `sim load` keeps the active world file
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .bloom import BloomFilter
from .errors import ValidationError

DEFAULT_TARGET_FP = 0.01
DEFAULT_EXPECTED_N = 1024

_KNOWN_KEYS = {
    "storage.path",
    "bloom.m",
    "bloom.k",
    "bloom.target_fp",
    "bloom.expected_n",
    "default_tx_power_1m",
    "sim.gamma",
    "sim.noise_sigma",
    "sim.rssi_floor",
    "sim.seed",
    "sim.world_path",
}


@dataclass
class HubConfig:
    storage_path: Path | None = None
    bloom_m: int | None = None
    bloom_k: int | None = None
    bloom_target_fp: float = DEFAULT_TARGET_FP
    bloom_expected_n: int = DEFAULT_EXPECTED_N
    default_tx_power_1m: float | None = None
    sim_gamma: float = 2.0
    sim_noise_sigma: float = 0.0
    sim_rssi_floor: float = -90.0
    sim_seed: int = 0
    sim_world_path: Path | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "HubConfig":
        unknown = set(raw) - _KNOWN_KEYS
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        if raw.get("storage.path") is not None:
            cfg.storage_path = Path(raw["storage.path"])
        if raw.get("bloom.m") is not None:
            cfg.bloom_m = int(raw["bloom.m"])
        if raw.get("bloom.k") is not None:
            cfg.bloom_k = int(raw["bloom.k"])
        if raw.get("bloom.target_fp") is not None:
            cfg.bloom_target_fp = float(raw["bloom.target_fp"])
        if raw.get("bloom.expected_n") is not None:
            cfg.bloom_expected_n = int(raw["bloom.expected_n"])
        if raw.get("default_tx_power_1m") is not None:
            cfg.default_tx_power_1m = float(raw["default_tx_power_1m"])
        cfg.sim_gamma = float(raw.get("sim.gamma", cfg.sim_gamma))
        cfg.sim_noise_sigma = float(raw.get("sim.noise_sigma", cfg.sim_noise_sigma))
        cfg.sim_rssi_floor = float(raw.get("sim.rssi_floor", cfg.sim_rssi_floor))
        cfg.sim_seed = int(raw.get("sim.seed", cfg.sim_seed))
        if raw.get("sim.world_path") is not None:
            cfg.sim_world_path = Path(raw["sim.world_path"])
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> "HubConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ValidationError("config file must hold a JSON object")
        return cls.from_dict(raw)

    def make_bloom(self) -> BloomFilter:
        """Explicit m/k when both given, else sized from target fp rate."""
        if self.bloom_m is not None and self.bloom_k is not None:
            return BloomFilter(self.bloom_m, self.bloom_k)
        if (self.bloom_m is None) != (self.bloom_k is None):
            raise ValidationError("bloom.m and bloom.k must be set together")
        return BloomFilter.sized_for(self.bloom_expected_n, self.bloom_target_fp)

    def world_path(self) -> Path:
        """Active world file location; defaults next to the store log."""
        if self.sim_world_path is not None:
            return self.sim_world_path
        if self.storage_path is not None:
            return self.storage_path.with_name(self.storage_path.name + ".world.json")
        return Path("bdp.world.json")

    def rules_path(self) -> Path:
        """Ruleset file location, kept next to the store log."""
        if self.storage_path is not None:
            return self.storage_path.with_name(self.storage_path.name + ".rules.json")
        return Path("bdp.rules.json")
