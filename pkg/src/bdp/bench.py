"""Desk-scale throughput measurements for the lookup path.

Populates an in-memory registry with N single-chunk records, then times
by-MAC lookups, and compares the Bloom-gated lookup path against blind
lookups under traffic where most scanned nodes carry no data (the normal
radio neighborhood). Distributed-store throughput claims are explicitly
out of scope; this measures the embedded engine only.
"""

from __future__ import annotations

import time

import numpy as np

from .bloom import BloomFilter
from .kvstore import SortedKVStore
from .registry import DataChunk, Registry


def mac_for_index(index: int, prefix: int = 0x02) -> str:
    """Deterministic locally-administered MAC for a node number."""
    octets = [
        prefix,
        (index >> 32) & 0xFF,
        (index >> 24) & 0xFF,
        (index >> 16) & 0xFF,
        (index >> 8) & 0xFF,
        index & 0xFF,
    ]
    return ":".join(f"{o:02x}" for o in octets)


def populate(records: int, target_fp: float = 0.01) -> Registry:
    registry = Registry(
        SortedKVStore(), BloomFilter.sized_for(max(records, 1), target_fp)
    )
    chunk = [DataChunk.of("text", "bench payload")]
    for i in range(records):
        registry.create_record(mac_for_index(i), chunk, now=i + 1)
    return registry


def run_bench(
    records: int = 100_000,
    queries: int = 200_000,
    unregistered_frac: float = 0.9,
    seed: int = 7,
) -> dict:
    """Measure lookups/sec and the Bloom-path speedup. Returns a report dict."""
    rng = np.random.default_rng(seed)

    t0 = time.perf_counter()
    registry = populate(records)
    populate_seconds = time.perf_counter() - t0
    get_active = registry.get_active_by_mac

    # Warm the lazily-sorted index before timing anything.
    get_active(mac_for_index(0))

    # Phase 1: raw by-MAC lookup throughput over registered nodes.
    lookup_macs = [mac_for_index(int(i)) for i in rng.integers(0, records, size=queries)]
    t0 = time.perf_counter()
    for mac in lookup_macs:
        get_active(mac)
    lookup_seconds = time.perf_counter() - t0
    lookups_per_sec = queries / lookup_seconds

    # Phase 2: mostly-unregistered traffic, gated vs blind.
    registered = rng.integers(0, records, size=queries)
    fresh = rng.integers(records, 2 * records, size=queries)  # never registered
    gate = rng.random(size=queries) < unregistered_frac
    traffic = [
        mac_for_index(int(fresh[i]) if gate[i] else int(registered[i]))
        for i in range(queries)
    ]

    maybe_contains = registry.bloom.maybe_contains
    skips = 0
    t0 = time.perf_counter()
    for mac in traffic:
        if maybe_contains(mac):
            get_active(mac)
        else:
            skips += 1
    gated_seconds = time.perf_counter() - t0

    t0 = time.perf_counter()
    for mac in traffic:
        get_active(mac)
    blind_seconds = time.perf_counter() - t0

    bloom = registry.bloom
    return {
        "records": records,
        "queries": queries,
        "unregistered_frac": unregistered_frac,
        "populate_seconds": round(populate_seconds, 3),
        "lookups_per_sec": round(lookups_per_sec, 1),
        "bloom": {
            "m": bloom.m,
            "k": bloom.k,
            "predicted_fp": bloom.predicted_fp(),
            "skip_ratio": skips / queries,
            "gated_lookups_per_sec": round(queries / gated_seconds, 1),
            "blind_lookups_per_sec": round(queries / blind_seconds, 1),
            "speedup": round(blind_seconds / gated_seconds, 2),
        },
    }
