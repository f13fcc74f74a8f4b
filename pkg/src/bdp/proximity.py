"""Context-aware browsing core: fingerprint in, assembled content out.

For each observed node the Bloom cache is consulted first; a negative
answer skips the store entirely (most nearby nodes carry no data). Nodes
that pass are looked up in the registry, their active records' chunks
concatenated into one entry. Enabled rules matching the fingerprint
contribute additional entries carrying the triggering observation's
RSSI. Entries sort strongest-signal-first. The cache is an optimization
only: with it bypassed the result is identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ValidationError
from .ranging import estimate_distance
from .registry import BrowsingEvent, DataChunk, Registry, normalize_mac
from .rules import Fingerprint, RuleBook, evaluate

SOURCE_RECORD = "record"
SOURCE_RULE = "rule"


@dataclass(frozen=True)
class QueryEntry:
    node: str
    rssi: float
    distance_m: float | None
    chunks: tuple[DataChunk, ...]
    source: str

    def to_wire(self) -> dict:
        wire = {"node": self.node, "rssi": self.rssi}
        if self.distance_m is not None:
            wire["distance_m"] = self.distance_m
        wire["chunks"] = [c.to_wire() for c in self.chunks]
        wire["source"] = self.source
        return wire


@dataclass(frozen=True)
class QueryResult:
    """Entries sorted by RSSI descending, ties by node MAC ascending."""

    entries: tuple[QueryEntry, ...]

    def to_wire(self) -> list[dict]:
        return [e.to_wire() for e in self.entries]

    def to_json(self) -> bytes:
        return json.dumps(self.to_wire(), separators=(",", ":")).encode("utf-8")


class ProximityBrowser:
    """Query pipeline bound to one registry and one rulebook."""

    def __init__(self, registry: Registry, rulebook: RuleBook | None = None):
        self.registry = registry
        self.rulebook = rulebook if rulebook is not None else RuleBook()

    def _coerce_fingerprint(self, fingerprint) -> Fingerprint:
        if isinstance(fingerprint, Fingerprint):
            return fingerprint
        return Fingerprint.of(fingerprint)

    def query(
        self,
        requester: str,
        fingerprint,
        tx_power_1m: float | None = None,
        use_bloom: bool = True,
        record_events: bool = True,
    ) -> QueryResult:
        """Assemble all content activated by a scan fingerprint.

        One entry per node with active records (chunks in record order,
        then chunk order), plus one entry per fired rule. Records one
        browsing event per record entry unless record_events is False.
        """
        requester = normalize_mac(requester)
        fp = self._coerce_fingerprint(fingerprint)
        if record_events and fp.scan_time <= 0:
            raise ValidationError(
                "fingerprint scan_time must be positive to record events "
                "(pass record_events=False to skip event logging)"
            )

        def distance(rssi: float) -> float | None:
            if tx_power_1m is None:
                return None
            return estimate_distance(tx_power_1m, rssi).meters

        entries: list[QueryEntry] = []
        events: list[BrowsingEvent] = []
        for node, rssi in fp.observations:
            if use_bloom and not self.registry.bloom.maybe_contains(node):
                continue
            records = self.registry.get_active_by_mac(node)
            if not records:
                continue
            chunks: list[DataChunk] = []
            for record in records:
                chunks.extend(record.chunks)
            entries.append(
                QueryEntry(node, rssi, distance(rssi), tuple(chunks), SOURCE_RECORD)
            )
            events.append(
                BrowsingEvent(requester, node, records[0].record_id, fp.scan_time)
            )

        ruleset = self.rulebook.list_rules()
        rules_by_id = {rule.rule_id: rule for rule in ruleset}
        for rule_id, content in evaluate(ruleset, fp):
            rule = rules_by_id[rule_id]
            rssi = fp.rssi_of(rule.node)
            entries.append(
                QueryEntry(rule.node, rssi, distance(rssi), content, SOURCE_RULE)
            )

        # Stable sort: full ties keep assembly order (records before rules).
        entries.sort(key=lambda e: (-e.rssi, e.node))

        if record_events:
            for event in events:
                self.registry.record_event(event)
        return QueryResult(tuple(entries))

    def lookup_count_probe(self, fingerprint) -> dict:
        """How one query would split between cache skips and store lookups."""
        fp = self._coerce_fingerprint(fingerprint)
        bloom_skips = 0
        store_lookups = 0
        for node, _rssi in fp.observations:
            if self.registry.bloom.maybe_contains(node):
                store_lookups += 1
            else:
                bloom_skips += 1
        return {"bloom_skips": bloom_skips, "store_lookups": store_lookups}
