"""Embedded sorted key-value store.

Keys are (row, family, qualifier, visibility, timestamp) cells. The four
byte fields sort lexicographically ascending; equal cells sort by
timestamp descending, so the newest version of a cell is the first one a
sequential scan yields. Values are opaque bytes.

The store is an in-memory ordered map with an optional append-only log
file for persistence (replayed on startup). Writes are serialized by a
lock; scans materialize a consistent snapshot, so a concurrent put never
tears an iteration.
"""

from __future__ import annotations

import struct
import threading
from bisect import bisect_left
from pathlib import Path
from typing import NamedTuple

from .errors import ValidationError

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1

# Key prefixes for range scans: 1-4 byte fields, compared tuple-wise.
KeyPrefix = tuple[bytes, ...]


class InvalidKeyError(ValidationError):
    code = "invalid_key"


class StoreKey(NamedTuple):
    """Full cell coordinate. Identity includes the timestamp.

    Ordering is NOT plain tuple order: byte fields compare ascending but
    equal cells compare by timestamp descending, so the newest version of
    a cell sorts first.
    """

    row: bytes
    family: bytes = b""
    qualifier: bytes = b""
    visibility: bytes = b""
    timestamp: int = 0

    def validate(self) -> None:
        for name in ("row", "family", "qualifier", "visibility"):
            if not isinstance(getattr(self, name), bytes):
                raise InvalidKeyError(f"{name} must be bytes")
        if not self.row:
            raise InvalidKeyError("row must be non-empty")
        if not isinstance(self.timestamp, int) or isinstance(self.timestamp, bool):
            raise InvalidKeyError("timestamp must be an int")
        if not _INT64_MIN <= self.timestamp <= _INT64_MAX:
            raise InvalidKeyError("timestamp outside signed 64-bit range")

    def cell(self) -> tuple[bytes, bytes, bytes, bytes]:
        return (self.row, self.family, self.qualifier, self.visibility)

    def sort_key(self) -> tuple:
        # Negated timestamp makes newer versions sort first.
        return (self.row, self.family, self.qualifier, self.visibility, -self.timestamp)

    def __lt__(self, other) -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other) -> bool:
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other) -> bool:
        return self.sort_key() > other.sort_key()

    def __ge__(self, other) -> bool:
        return self.sort_key() >= other.sort_key()


class StoreEntry(NamedTuple):
    key: StoreKey
    value: bytes


# Append-only log encoding: one record per mutation.
_OP_PUT = 0x50
_OP_DELETE = 0x44
_U32 = struct.Struct(">I")
_I64 = struct.Struct(">q")


def _encode_put(key: StoreKey, value: bytes) -> bytes:
    parts = [bytes([_OP_PUT])]
    for field in (key.row, key.family, key.qualifier, key.visibility):
        parts.append(_U32.pack(len(field)))
        parts.append(field)
    parts.append(_I64.pack(key.timestamp))
    parts.append(_U32.pack(len(value)))
    parts.append(value)
    return b"".join(parts)


def _encode_delete(key: StoreKey) -> bytes:
    parts = [bytes([_OP_DELETE])]
    for field in (key.row, key.family, key.qualifier, key.visibility):
        parts.append(_U32.pack(len(field)))
        parts.append(field)
    parts.append(_I64.pack(key.timestamp))
    return b"".join(parts)


class _LogTruncated(Exception):
    pass


def _read_exact(buf: bytes, pos: int, n: int) -> tuple[bytes, int]:
    if pos + n > len(buf):
        raise _LogTruncated()
    return buf[pos : pos + n], pos + n


def _decode_record(buf: bytes, pos: int) -> tuple[int, StoreKey, bytes | None, int]:
    op_raw, pos = _read_exact(buf, pos, 1)
    op = op_raw[0]
    if op not in (_OP_PUT, _OP_DELETE):
        raise ValueError(f"corrupt log: unknown op byte 0x{op:02x}")
    fields = []
    for _ in range(4):
        ln_raw, pos = _read_exact(buf, pos, 4)
        (ln,) = _U32.unpack(ln_raw)
        field, pos = _read_exact(buf, pos, ln)
        fields.append(field)
    ts_raw, pos = _read_exact(buf, pos, 8)
    (ts,) = _I64.unpack(ts_raw)
    key = StoreKey(fields[0], fields[1], fields[2], fields[3], ts)
    value = None
    if op == _OP_PUT:
        ln_raw, pos = _read_exact(buf, pos, 4)
        (ln,) = _U32.unpack(ln_raw)
        value, pos = _read_exact(buf, pos, ln)
    return op, key, value, pos


class SortedKVStore:
    """Ordered map of StoreEntry with versioned cells.

    ``path=None`` keeps everything in memory; a path makes every mutation
    append to a binary log that is replayed in order on the next open.
    A truncated final record (crash mid-append) is ignored on replay.
    """

    def __init__(self, path: str | Path | None = None):
        # cell -> {timestamp -> value}; full key identity = cell + timestamp
        self._cells: dict[tuple, dict[int, bytes]] = {}
        self._sorted: list[tuple] = []  # sort_key tuples, rebuilt lazily
        self._dirty = False
        self._lock = threading.RLock()
        self._log = None
        if path is not None:
            path = Path(path)
            if path.exists():
                self._replay(path.read_bytes())
            path.parent.mkdir(parents=True, exist_ok=True)
            self._log = open(path, "ab")

    def _replay(self, buf: bytes) -> None:
        pos = 0
        while pos < len(buf):
            try:
                op, key, value, pos = _decode_record(buf, pos)
            except _LogTruncated:
                break  # partial tail write; keep everything before it
            if op == _OP_PUT:
                self._apply_put(key, value)
            else:
                self._apply_delete(key)

    def _apply_put(self, key: StoreKey, value: bytes) -> None:
        versions = self._cells.setdefault(key.cell(), {})
        fresh = key.timestamp not in versions
        versions[key.timestamp] = value
        if fresh:
            self._sorted.append(key.sort_key())
            self._dirty = True

    def _apply_delete(self, key: StoreKey) -> None:
        versions = self._cells.get(key.cell())
        if versions is None or key.timestamp not in versions:
            return
        del versions[key.timestamp]
        if not versions:
            del self._cells[key.cell()]
        self._sorted.remove(key.sort_key())

    def put(self, entry: StoreEntry) -> None:
        entry.key.validate()
        if not isinstance(entry.value, bytes):
            raise ValidationError("value must be bytes")
        with self._lock:
            self._apply_put(entry.key, entry.value)
            if self._log is not None:
                self._log.write(_encode_put(entry.key, entry.value))
                self._log.flush()

    def delete(self, key: StoreKey) -> None:
        key.validate()
        with self._lock:
            self._apply_delete(key)
            if self._log is not None:
                self._log.write(_encode_delete(key))
                self._log.flush()

    def get_latest(
        self,
        row: bytes,
        family: bytes = b"",
        qualifier: bytes = b"",
        visibility: bytes = b"",
    ) -> StoreEntry | None:
        """Newest version of one cell, or None."""
        if not row or not isinstance(row, bytes):
            raise InvalidKeyError("row must be non-empty bytes")
        with self._lock:
            versions = self._cells.get((row, family, qualifier, visibility))
            if not versions:
                return None
            ts = max(versions)
            return StoreEntry(StoreKey(row, family, qualifier, visibility, ts), versions[ts])

    def _ensure_sorted(self) -> None:
        if self._dirty:
            self._sorted.sort()
            self._dirty = False

    def scan(self, start: KeyPrefix | None = None, end: KeyPrefix | None = None) -> list[StoreEntry]:
        """All entries with start <= sort_key < end, in total key order.

        ``start``/``end`` are key prefixes: tuples of 1-4 byte fields
        (row, family, qualifier, visibility). None means unbounded. An
        inverted range yields an empty list.
        """
        with self._lock:
            self._ensure_sorted()
            lo = 0 if start is None else bisect_left(self._sorted, start)
            hi = len(self._sorted) if end is None else bisect_left(self._sorted, end)
            out = []
            for sk in self._sorted[lo:hi]:
                row, family, qualifier, visibility, neg_ts = sk
                cell = (row, family, qualifier, visibility)
                out.append(
                    StoreEntry(
                        StoreKey(row, family, qualifier, visibility, -neg_ts),
                        self._cells[cell][-neg_ts],
                    )
                )
            return out

    def scan_row(self, row: bytes, family: bytes | None = None) -> list[StoreEntry]:
        """Entries of one row (optionally one column family)."""
        if family is None:
            return self.scan((row,), (row + b"\x00",))
        return self.scan((row, family), (row, family + b"\x00"))

    def __len__(self) -> int:
        with self._lock:
            return sum(len(v) for v in self._cells.values())

    def close(self) -> None:
        with self._lock:
            if self._log is not None:
                self._log.close()
                self._log = None

    def __enter__(self) -> "SortedKVStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
