"""Full flow without radio hardware: scan -> cache -> lookup -> render.

An observer walks past three data-bearing nodes in a simulated world;
content appears and disappears with network proximity, sorted by signal
strength, with distances estimated from the calibrated power.

Run: python demos/05_simulated_walk.py
"""

from bdp import (
    BloomFilter,
    Fingerprint,
    ProximityBrowser,
    Registry,
    RuleBook,
    SimNode,
    SimWorld,
    SortedKVStore,
)
from bdp.registry import DataChunk

TX = -59.0

world = SimWorld(rssi_floor=-85.0)
registry = Registry(SortedKVStore(), BloomFilter.sized_for(64, 0.01))
rules = RuleBook()
browser = ProximityBrowser(registry, rules)

shops = {
    "02:00:00:00:00:01": ("coffee at the corner", 0.0),
    "02:00:00:00:00:02": ("books, second floor", 30.0),
    "02:00:00:00:00:03": ("late-night pharmacy", 60.0),
}
now = 1_000
for mac, (text, x) in shops.items():
    world.add_node(SimNode(mac, x, 5.0, TX))
    registry.create_record(mac, [DataChunk.of("text", text)], now=now)
    now += 1

# a few silent bystander nodes the cache will screen out
for i in range(10):
    world.add_node(SimNode(f"02:00:00:00:01:{i:02x}", i * 7.0, -4.0, TX))

rules.create_rule(
    "02:00:00:00:00:02", -70, -30, [DataChunk.of("url", "https://example.com/signing")],
    label="author signing, near the door only",
)

for step, x in enumerate((0.0, 15.0, 30.0, 45.0, 60.0)):
    fp = world.scan((x, 0.0), time=10_000 + step)
    probe = browser.lookup_count_probe(fp)
    result = browser.query("02:00:00:00:00:aa", fp, tx_power_1m=TX)
    print(f"\n-- observer at x={x:.0f} m: {len(fp.observations)} nodes heard, "
          f"{probe['bloom_skips']} skipped by cache, {probe['store_lookups']} looked up")
    if not result.entries:
        print("   (nothing nearby has data)")
    for entry in result.entries:
        distance = f"{entry.distance_m:5.1f} m" if entry.distance_m else "?"
        text = "; ".join(c.data for c in entry.chunks)
        print(f"   {entry.rssi:7.2f} dBm  ~{distance}  [{entry.source}] {text}")

print("\nbrowsing events logged per shop:")
for mac, (text, _) in shops.items():
    print(f"   {mac}: {registry.event_stats(mac, (0, 10**9))}  ({text})")
