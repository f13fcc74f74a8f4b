"""Bloom negative cache: skip lookups for empty nodes, predict the cost.

Run: python demos/02_negative_cache.py
"""

import random

from bdp import BloomFilter, predicted_fp_approx, predicted_fp_exact

m, k, n = 4096, 6, 500
flt = BloomFilter(m, k)
for i in range(n):
    flt.insert(f"02:00:00:00:{i >> 8:02x}:{i & 255:02x}")

print(f"filter: m={m} bits, k={k} hashes, {n} keys, {flt.popcount()} bits set")
print("inserted key present:", flt.maybe_contains("02:00:00:00:00:00"))
print("fresh key present:   ", flt.maybe_contains("ff:ff:ff:ff:ff:ff"))

print("\npredicted false-positive rate")
print("  exact  (1-(1-1/m)^kn)^k =", predicted_fp_exact(m, n, k))
print("  approx (1-e^-kn/m)^k    =", predicted_fp_approx(m, n, k))

rng = random.Random(1)
probes = 50_000
hits = sum(
    flt.maybe_contains(f"{rng.getrandbits(48):012x}-fresh-{i}") for i in range(probes)
)
print(f"  measured over {probes} fresh probes: {hits / probes:.5f}")

print("\ntradeoff table: bigger m, fewer wasted lookups")
for bits_per_key in (4, 8, 16, 32):
    mm = bits_per_key * n
    print(f"  m={mm:>6} ({bits_per_key:>2} bits/key): fp ~ {predicted_fp_approx(mm, n, k):.5f}")
