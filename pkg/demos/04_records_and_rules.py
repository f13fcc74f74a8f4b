"""Registry and rule engine: announcements, toggling, browsing stats.

Run: python demos/04_records_and_rules.py
"""

import json

from bdp import BloomFilter, Registry, RuleBook, SortedKVStore
from bdp.registry import DataChunk

registry = Registry(SortedKVStore(), BloomFilter.sized_for(1024, 0.01))
rules = RuleBook()

CAR = "aa:bb:cc:dd:ee:ff"

record_id = registry.create_record(
    CAR,
    [
        DataChunk.of("text", "garage sale on 5th, saturday"),
        DataChunk.of("url", "https://example.com/sale"),
        DataChunk.of("phone", "+15551234567"),
    ],
    now=1_000,
)
print("created record", record_id, "for", CAR)
print(json.dumps(registry.get_record(record_id).to_wire(), indent=2))

print("\nswitching the announcement off and on:")
registry.set_status(record_id, False, now=2_000)
print("  active after off:", registry.get_active_by_mac(CAR))
registry.set_status(record_id, True, now=3_000)
print("  active after on: ", [r.record_id for r in registry.get_active_by_mac(CAR)])

rule_id = rules.create_rule(
    CAR, -75, -40, [DataChunk.of("text", "you are right next to the car")], label="curbside"
)
print("\nrule", rule_id, "fires only inside [-75, -40] dBm:")
from bdp import Fingerprint, evaluate  # noqa: E402

for rssi in (-60, -80):
    fired = evaluate(rules.list_rules(), Fingerprint.of([(CAR, rssi)]))
    print(f"  rssi {rssi}: {'fires' if fired else 'silent'}")

print("\nbrowsing events per window:")
from bdp import BrowsingEvent  # noqa: E402

for t in (10_000, 20_000, 30_000):
    registry.record_event(BrowsingEvent("02:00:00:00:00:01", CAR, record_id, t))
print("  [0, 40000):     ", registry.event_stats(CAR, (0, 40_000)))
print("  [15000, 25000): ", registry.event_stats(CAR, (15_000, 25_000)))
