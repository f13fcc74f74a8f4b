"""Proximity production rules over scan fingerprints.

A rule is the conjunction "node visible AND its RSSI within [min, max]"
(endpoints inclusive); firing activates the rule's content chunks.
Evaluation is pure: it never mutates the ruleset and returns matches in
ruleset order. There is no priority or conflict resolution; all matches
are returned and the client renders them.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import NotFoundError, ValidationError
from .registry import DataChunk, validate_chunks, new_record_id, normalize_mac


@dataclass(frozen=True)
class Fingerprint:
    """Nodes visible from one point with their signal strengths.

    Node identifiers are unique; a duplicated node keeps its strongest
    RSSI. Observation order is first-seen scan order.
    """

    observations: tuple[tuple[str, float], ...]
    scan_time: int = 0

    @classmethod
    def of(cls, observations, scan_time: int = 0) -> "Fingerprint":
        """Normalize macs and collapse duplicates (strongest RSSI wins)."""
        order: list[str] = []
        strongest: dict[str, float] = {}
        for mac, rssi in observations:
            mac = normalize_mac(mac)
            rssi = float(rssi)
            if not math.isfinite(rssi):
                raise ValidationError(f"rssi must be finite, got {rssi!r}")
            if mac not in strongest:
                order.append(mac)
                strongest[mac] = rssi
            elif rssi > strongest[mac]:
                strongest[mac] = rssi
        return cls(tuple((mac, strongest[mac]) for mac in order), scan_time)

    def rssi_of(self, mac: str) -> float | None:
        for node, rssi in self.observations:
            if node == mac:
                return rssi
        return None


@dataclass(frozen=True)
class ProximityRule:
    """node visible AND rssi in [rssi_min, rssi_max] => activate content."""

    rule_id: str
    node: str
    rssi_min: float
    rssi_max: float
    content: tuple[DataChunk, ...]
    enabled: bool = True
    label: str | None = None

    def to_wire(self) -> dict:
        wire = {
            "ruleID": self.rule_id,
            "node": self.node,
            "rssi_min": self.rssi_min,
            "rssi_max": self.rssi_max,
            "enabled": self.enabled,
            "content": [c.to_wire() for c in self.content],
        }
        if self.label is not None:
            wire["label"] = self.label
        return wire


def rule_from_wire(obj: dict) -> ProximityRule:
    """Validate one {ruleID, node, rssi_min, rssi_max, enabled, content, label?}."""
    if not isinstance(obj, dict):
        raise ValidationError("rule must be a JSON object")
    rule_id = obj.get("ruleID")
    if not isinstance(rule_id, str) or not rule_id:
        raise ValidationError("ruleID must be a non-empty string")
    rssi_min, rssi_max = _validate_interval(obj.get("rssi_min"), obj.get("rssi_max"))
    return ProximityRule(
        rule_id=rule_id,
        node=normalize_mac(obj.get("node")),
        rssi_min=rssi_min,
        rssi_max=rssi_max,
        content=validate_chunks(obj.get("content") or ()),
        enabled=bool(obj.get("enabled", True)),
        label=obj.get("label"),
    )


def _validate_interval(rssi_min: float, rssi_max: float) -> tuple[float, float]:
    try:
        rssi_min, rssi_max = float(rssi_min), float(rssi_max)
    except (TypeError, ValueError):
        raise ValidationError("rssi bounds must be numbers") from None
    if not (math.isfinite(rssi_min) and math.isfinite(rssi_max)):
        raise ValidationError("rssi bounds must be finite")
    if rssi_min > rssi_max:
        raise ValidationError(f"rssi_min {rssi_min} exceeds rssi_max {rssi_max}")
    return rssi_min, rssi_max


def evaluate(
    ruleset: Sequence[ProximityRule], fingerprint: Fingerprint
) -> list[tuple[str, tuple[DataChunk, ...]]]:
    """(ruleID, content) for every enabled rule whose condition holds."""
    rssi_by_node = dict(fingerprint.observations)
    fired = []
    for rule in ruleset:
        if not rule.enabled:
            continue
        rssi = rssi_by_node.get(rule.node)
        if rssi is not None and rule.rssi_min <= rssi <= rule.rssi_max:
            fired.append((rule.rule_id, rule.content))
    return fired


class RuleBook:
    """Mutable ruleset with creation-ordered listing and serialized writes."""

    def __init__(self):
        self._rules: dict[str, ProximityRule] = {}
        self._lock = threading.Lock()

    def create_rule(
        self,
        node: str,
        rssi_min: float,
        rssi_max: float,
        content: Sequence[DataChunk | dict],
        enabled: bool = True,
        label: str | None = None,
    ) -> str:
        node = normalize_mac(node)
        rssi_min, rssi_max = _validate_interval(rssi_min, rssi_max)
        rule = ProximityRule(
            rule_id=new_record_id(),
            node=node,
            rssi_min=rssi_min,
            rssi_max=rssi_max,
            content=validate_chunks(content),
            enabled=bool(enabled),
            label=label,
        )
        with self._lock:
            self._rules[rule.rule_id] = rule
        return rule.rule_id

    def update_rule(
        self,
        rule_id: str,
        node: str | None = None,
        rssi_min: float | None = None,
        rssi_max: float | None = None,
        content: Sequence[DataChunk | dict] | None = None,
        label: str | None = None,
    ) -> ProximityRule:
        with self._lock:
            rule = self._get(rule_id)
            new_min = rule.rssi_min if rssi_min is None else rssi_min
            new_max = rule.rssi_max if rssi_max is None else rssi_max
            new_min, new_max = _validate_interval(new_min, new_max)
            rule = replace(
                rule,
                node=rule.node if node is None else normalize_mac(node),
                rssi_min=new_min,
                rssi_max=new_max,
                content=rule.content if content is None else validate_chunks(content),
                label=rule.label if label is None else label,
            )
            self._rules[rule_id] = rule
            return rule

    def set_enabled(self, rule_id: str, enabled: bool) -> ProximityRule:
        with self._lock:
            rule = replace(self._get(rule_id), enabled=bool(enabled))
            self._rules[rule_id] = rule
            return rule

    def get_rule(self, rule_id: str) -> ProximityRule:
        with self._lock:
            return self._get(rule_id)

    def _get(self, rule_id: str) -> ProximityRule:
        rule = self._rules.get(rule_id)
        if rule is None:
            raise NotFoundError(f"no rule with id {rule_id}")
        return rule

    def list_rules(self) -> list[ProximityRule]:
        """All rules in creation order (dicts preserve insertion order)."""
        with self._lock:
            return list(self._rules.values())

    def evaluate(self, fingerprint: Fingerprint) -> list[tuple[str, tuple[DataChunk, ...]]]:
        return evaluate(self.list_rules(), fingerprint)

    def to_wire_list(self) -> list[dict]:
        return [rule.to_wire() for rule in self.list_rules()]

    @classmethod
    def from_wire_list(cls, rules: Sequence[dict]) -> "RuleBook":
        book = cls()
        for obj in rules:
            rule = rule_from_wire(obj)
            if rule.rule_id in book._rules:
                raise ValidationError(f"duplicate ruleID {rule.rule_id}")
            book._rules[rule.rule_id] = rule
        return book
