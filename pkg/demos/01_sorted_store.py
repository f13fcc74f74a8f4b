"""Tour of the sorted key-value store: ordering, versions, persistence.

Run: python demos/01_sorted_store.py
"""

import tempfile
from pathlib import Path

from bdp import SortedKVStore, StoreEntry, StoreKey

store = SortedKVStore()

print("== byte-lexicographic row order ==")
for row in (b"beta", b"alphabet", b"alpha"):
    store.put(StoreEntry(StoreKey(row, b"f", b"q", timestamp=1), row))
for entry in store.scan():
    print("  row:", entry.key.row)

print("\n== versions of one cell: newest first ==")
cell = dict(row=b"node", family=b"state", qualifier=b"0")
for ts, value in ((100, b"stale"), (300, b"current"), (200, b"old")):
    store.put(StoreEntry(StoreKey(timestamp=ts, **cell), value))
for entry in store.scan_row(b"node"):
    print(f"  t={entry.key.timestamp}: {entry.value}")
print("  get_latest ->", store.get_latest(b"node", b"state", b"0").value)

print("\n== append-only log survives reopen ==")
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "demo.log"
    with SortedKVStore(path) as durable:
        durable.put(StoreEntry(StoreKey(b"k", timestamp=1), b"persisted"))
    with SortedKVStore(path) as reopened:
        print("  after reopen:", reopened.get_latest(b"k").value)
    print("  log size:", path.stat().st_size, "bytes")
