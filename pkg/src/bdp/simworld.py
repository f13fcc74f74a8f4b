"""Simulated radio world: discoverable nodes on a 2-D plane.

Stands in for real inquiry scans so the whole scan -> cache -> lookup ->
render flow runs with no radio hardware. Received power follows the
log-distance law rssi = tx_power_1m - 10*gamma*log10(d), gamma=2 being
the free-space 1/r^2 default, with optional gaussian dB noise (the usual
log-normal shadowing stand-in). Nodes below the RSSI floor are simply
not heard. Distances clamp to 1 cm to dodge the r=0 singularity.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import NotFoundError, ValidationError
from .registry import normalize_mac
from .rules import Fingerprint

MIN_DISTANCE_M = 0.01


@dataclass
class SimNode:
    mac: str
    x: float
    y: float
    tx_power_1m: float
    discoverable: bool = True

    def __post_init__(self):
        self.mac = normalize_mac(self.mac)
        for name in ("x", "y", "tx_power_1m"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"node {name} must be finite")
            setattr(self, name, value)

    def to_wire(self) -> dict:
        return {
            "mac": self.mac,
            "x": self.x,
            "y": self.y,
            "tx_power_1m": self.tx_power_1m,
            "discoverable": self.discoverable,
        }


@dataclass
class SimWorld:
    """Node population plus propagation parameters.

    Scans are deterministic for a given seed and call sequence; nodes are
    visited in MAC order so insertion order never reshuffles noise draws.
    Each world owns its RNG and is meant for single-threaded use.
    """

    gamma: float = 2.0
    noise_sigma: float = 0.0
    rssi_floor: float = -90.0
    seed: int = 0
    nodes: dict[str, SimNode] = field(default_factory=dict)

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValidationError("gamma must be > 0")
        if self.noise_sigma < 0:
            raise ValidationError("noise_sigma must be >= 0")
        self._rng = random.Random(self.seed)

    def add_node(self, node: SimNode) -> None:
        if node.mac in self.nodes:
            raise ValidationError(f"duplicate node mac {node.mac}")
        self.nodes[node.mac] = node

    def move_node(self, mac: str, x: float, y: float) -> SimNode:
        """Reposition a node; any data bound to its MAC is untouched."""
        mac = normalize_mac(mac)
        node = self.nodes.get(mac)
        if node is None:
            raise NotFoundError(f"no node with mac {mac}")
        if not (math.isfinite(float(x)) and math.isfinite(float(y))):
            raise ValidationError("coordinates must be finite")
        node.x, node.y = float(x), float(y)
        return node

    def scan(self, observer: tuple[float, float], time: int = 0) -> Fingerprint:
        """Inquiry scan from a point: every discoverable node above the floor."""
        ox, oy = float(observer[0]), float(observer[1])
        if not (math.isfinite(ox) and math.isfinite(oy)):
            raise ValidationError("observer position must be finite")
        observations = []
        for mac in sorted(self.nodes):
            node = self.nodes[mac]
            if not node.discoverable:
                continue
            d = max(math.hypot(node.x - ox, node.y - oy), MIN_DISTANCE_M)
            rssi = node.tx_power_1m - 10.0 * self.gamma * math.log10(d)
            if self.noise_sigma > 0:
                rssi += self._rng.gauss(0.0, self.noise_sigma)
            if rssi >= self.rssi_floor:
                observations.append((mac, rssi))
        return Fingerprint(tuple(observations), scan_time=time)

    # -- world description files ---------------------------------------------

    def to_wire(self) -> dict:
        return {
            "gamma": self.gamma,
            "noise_sigma": self.noise_sigma,
            "rssi_floor": self.rssi_floor,
            "seed": self.seed,
            "nodes": [self.nodes[mac].to_wire() for mac in self.nodes],
        }

    @classmethod
    def from_wire(cls, obj: dict) -> "SimWorld":
        if not isinstance(obj, dict):
            raise ValidationError("world description must be a JSON object")
        world = cls(
            gamma=float(obj.get("gamma", 2.0)),
            noise_sigma=float(obj.get("noise_sigma", 0.0)),
            rssi_floor=float(obj.get("rssi_floor", -90.0)),
            seed=int(obj.get("seed", 0)),
        )
        for raw in obj.get("nodes", []):
            if not isinstance(raw, dict):
                raise ValidationError("world nodes must be objects")
            try:
                node = SimNode(
                    mac=raw["mac"],
                    x=raw["x"],
                    y=raw["y"],
                    tx_power_1m=raw["tx_power_1m"],
                    discoverable=bool(raw.get("discoverable", True)),
                )
            except KeyError as exc:
                raise ValidationError(f"world node missing field {exc}") from None
            world.add_node(node)
        return world

    @classmethod
    def load(cls, path: str | Path) -> "SimWorld":
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"world file is not valid JSON: {exc}") from None
        return cls.from_wire(obj)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_wire(), indent=2) + "\n")
