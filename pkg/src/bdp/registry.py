"""Record registry: node identifiers bound to arrays of typed data chunks.

Records live in the sorted store under row = MAC, family "rec",
qualifier = recordID, version timestamp = last modification, so the
typical by-MAC query is a single-row scan. A side index (family "rid")
maps recordID back to its MAC for updates. Browsing events append under
the provider's row, family "evt".

Every MAC that ever received a record is inserted into the Bloom cache
*before* its record becomes queryable, so a bloom miss is a guaranteed
"no data" and the query path may skip the store.

Callers supply `now` (epoch ms) and must not hand a given record a
timestamp older than its last modification; the registry never reads a
clock.
"""

from __future__ import annotations

import json
import re
import secrets
import time
from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Sequence
from urllib.parse import urlparse

from .bloom import BloomFilter
from .errors import NotFoundError, ValidationError
from .kvstore import SortedKVStore, StoreEntry, StoreKey

_MAC_INPUT = re.compile(r"^([0-9A-Fa-f]{2})([:-])([0-9A-Fa-f]{2})[:-]([0-9A-Fa-f]{2})[:-]([0-9A-Fa-f]{2})[:-]([0-9A-Fa-f]{2})[:-]([0-9A-Fa-f]{2})$")
_MAC_CANONICAL = re.compile(r"^[0-9a-f]{2}(:[0-9a-f]{2}){5}$")

_FAMILY_RECORD = b"rec"
_FAMILY_RECORD_INDEX = b"rid"
_FAMILY_EVENT = b"evt"


def normalize_mac(mac: str) -> str:
    """Canonical lowercase colon form; accepts uppercase and '-' separators."""
    if not isinstance(mac, str):
        raise ValidationError("mac must be a string", code="invalid_mac")
    if _MAC_CANONICAL.match(mac):
        return mac
    match = _MAC_INPUT.match(mac)
    if not match:
        raise ValidationError(f"invalid mac address: {mac!r}", code="invalid_mac")
    octets = [match.group(i) for i in (1, 3, 4, 5, 6, 7)]
    return ":".join(o.lower() for o in octets)


class ChunkType(str, Enum):
    TEXT = "text"
    URL = "url"
    IMAGE = "image"
    EMAIL = "email"
    PHONE = "phone"
    FBPROFILE = "fbprofile"
    TWPROFILE = "twprofile"


# Types whose payload must parse as an absolute URL. fbprofile/twprofile
# carry extra meaning for clients but are validated as plain URLs here.
_URL_TYPES = {ChunkType.URL, ChunkType.IMAGE, ChunkType.FBPROFILE, ChunkType.TWPROFILE}

_CHUNK_TYPE_BY_VALUE = {t.value: t for t in ChunkType}


class DataChunk(NamedTuple):
    """One {"type": ..., "data": ...} element of a record's data array."""

    type: ChunkType
    data: str

    @classmethod
    def of(cls, type: str | ChunkType, data: str) -> "DataChunk":
        """Validating constructor for wire and user input."""
        try:
            chunk_type = _CHUNK_TYPE_BY_VALUE.get(type)  # str enum: members hash as values
        except TypeError:
            chunk_type = None
        if chunk_type is None:
            raise ValidationError(
                f"unknown chunk type: {type!r}", code="invalid_chunk_type"
            )
        if not isinstance(data, str) or not data:
            raise ValidationError("chunk data must be a non-empty string")
        if chunk_type in _URL_TYPES:
            parsed = urlparse(data)
            if not parsed.scheme or not parsed.netloc:
                raise ValidationError(
                    f"{chunk_type.value} payload must be an absolute URL: {data!r}"
                )
        return cls(chunk_type, data)

    def to_wire(self) -> dict:
        return {"type": self.type.value, "data": self.data}


def chunks_from_wire(raw: object) -> list[DataChunk]:
    """Validate a wire-format chunk array ([{"type","data"}, ...])."""
    if not isinstance(raw, list) or not raw:
        raise ValidationError("data_array must be a non-empty list of chunks")
    out = []
    for item in raw:
        if not isinstance(item, dict):
            raise ValidationError("each chunk must be an object with type and data")
        out.append(DataChunk.of(item.get("type"), item.get("data")))
    return out


def validate_chunks(chunks: Sequence[DataChunk | dict]) -> tuple[DataChunk, ...]:
    if not chunks:
        raise ValidationError("a record needs at least one data chunk")
    validated = []
    for chunk in chunks:
        if isinstance(chunk, DataChunk):
            validated.append(DataChunk.of(chunk.type, chunk.data))
        elif isinstance(chunk, dict):
            validated.append(DataChunk.of(chunk.get("type"), chunk.get("data")))
        else:
            raise ValidationError("chunks must be DataChunk or {type, data} objects")
    return tuple(validated)


class BdpRecord(NamedTuple):
    """One stored announcement: a MAC plus its typed data chunks."""

    record_id: str
    mac: str
    timestamp_created: int
    timestamp_modified: int
    status: bool
    chunks: tuple[DataChunk, ...]

    def to_wire(self) -> dict:
        # Fixed field order and integer status keep the wire form canonical.
        return {
            "recordID": self.record_id,
            "MAC_address": self.mac,
            "timestamp_created": self.timestamp_created,
            "timestamp_modified": self.timestamp_modified,
            "status": 1 if self.status else 0,
            "data_array": [c.to_wire() for c in self.chunks],
        }

    def to_json(self) -> bytes:
        return json.dumps(self.to_wire(), separators=(",", ":")).encode("utf-8")

    @classmethod
    def from_json(cls, raw: bytes) -> "BdpRecord":
        obj = json.loads(raw)
        return cls(
            obj["recordID"],
            obj["MAC_address"],
            obj["timestamp_created"],
            obj["timestamp_modified"],
            bool(obj["status"]),
            tuple(
                DataChunk(_CHUNK_TYPE_BY_VALUE[c["type"]], c["data"])
                for c in obj["data_array"]
            ),
        )


class BrowsingEvent(NamedTuple):
    """requester fetched content provided by provider at time t."""

    requester_mac: str
    provider_mac: str
    record_id: str
    time: int

    def to_wire(self) -> dict:
        return {
            "requester_mac": self.requester_mac,
            "provider_mac": self.provider_mac,
            "record_id": self.record_id,
            "time": self.time,
        }


def new_record_id() -> str:
    """128-bit random identifier as 32 hex chars."""
    return secrets.token_hex(16)


# Stored record blobs are immutable (a modification writes a new version),
# so parsing may be memoized; json.loads dominates the lookup path otherwise.
@lru_cache(maxsize=1 << 17)
def _parse_record(raw: bytes) -> BdpRecord:
    return BdpRecord.from_json(raw)


class Registry:
    """Create/update/toggle/fetch records; log browsing events."""

    def __init__(self, store: SortedKVStore, bloom: BloomFilter):
        self.store = store
        self.bloom = bloom
        self._event_seq = time.time_ns()

    # -- records -----------------------------------------------------------

    def create_record(
        self, mac: str, chunks: Sequence[DataChunk | dict], now: int
    ) -> str:
        mac = normalize_mac(mac)
        validated = validate_chunks(chunks)
        record_id = new_record_id()
        record = BdpRecord(
            record_id=record_id,
            mac=mac,
            timestamp_created=now,
            timestamp_modified=now,
            status=True,
            chunks=validated,
        )
        # Bloom first: the filter must answer "maybe" from the instant the
        # record is queryable, or the cache would hide real data.
        self.bloom.insert(mac)
        self.store.put(
            StoreEntry(
                StoreKey(record_id.encode(), _FAMILY_RECORD_INDEX, timestamp=now),
                mac.encode(),
            )
        )
        self._put_record(record)
        return record_id

    def _put_record(self, record: BdpRecord) -> None:
        self.store.put(
            StoreEntry(
                StoreKey(
                    record.mac.encode(),
                    _FAMILY_RECORD,
                    record.record_id.encode(),
                    timestamp=record.timestamp_modified,
                ),
                record.to_json(),
            )
        )

    def _load_record(self, record_id: str) -> BdpRecord:
        if not isinstance(record_id, str) or not record_id:
            raise ValidationError("recordID must be a non-empty string")
        index = self.store.get_latest(record_id.encode(), _FAMILY_RECORD_INDEX)
        if index is None:
            raise NotFoundError(f"no record with id {record_id}")
        entry = self.store.get_latest(index.value, _FAMILY_RECORD, record_id.encode())
        if entry is None:
            raise NotFoundError(f"no record with id {record_id}")
        return _parse_record(entry.value)

    def update_record(
        self, record_id: str, chunks: Sequence[DataChunk | dict], now: int
    ) -> BdpRecord:
        """Replace the data array; creation timestamp survives."""
        current = self._load_record(record_id)
        validated = validate_chunks(chunks)
        updated = BdpRecord(
            record_id=current.record_id,
            mac=current.mac,
            timestamp_created=current.timestamp_created,
            timestamp_modified=now,
            status=current.status,
            chunks=validated,
        )
        self._put_record(updated)
        return updated

    def set_status(self, record_id: str, active: bool, now: int) -> BdpRecord:
        """Switch an announcement on/off. Always bumps timestamp_modified."""
        current = self._load_record(record_id)
        updated = BdpRecord(
            record_id=current.record_id,
            mac=current.mac,
            timestamp_created=current.timestamp_created,
            timestamp_modified=now,
            status=bool(active),
            chunks=current.chunks,
        )
        self._put_record(updated)
        return updated

    def get_record(self, record_id: str) -> BdpRecord:
        return self._load_record(record_id)

    def get_records_by_mac(self, mac: str, include_inactive: bool = False) -> list[BdpRecord]:
        """Records for one MAC, newest version of each, creation order."""
        mac = normalize_mac(mac)
        records = []
        seen_qualifier = None
        for entry in self.store.scan_row(mac.encode(), _FAMILY_RECORD):
            # Versions of one cell arrive newest-first; keep the head only.
            if entry.key.qualifier == seen_qualifier:
                continue
            seen_qualifier = entry.key.qualifier
            record = _parse_record(entry.value)
            if include_inactive or record.status:
                records.append(record)
        records.sort(key=lambda r: (r.timestamp_created, r.record_id))
        return records

    def get_active_by_mac(self, mac: str) -> list[BdpRecord]:
        return self.get_records_by_mac(mac, include_inactive=False)

    # -- browsing events ----------------------------------------------------

    def record_event(self, event: BrowsingEvent) -> None:
        requester = normalize_mac(event.requester_mac)
        provider = normalize_mac(event.provider_mac)
        if not isinstance(event.time, int) or event.time <= 0:
            raise ValidationError("event time must be a positive epoch-ms integer")
        self._event_seq += 1
        qualifier = f"{requester}#{self._event_seq:020d}".encode()
        payload = BrowsingEvent(requester, provider, event.record_id, event.time)
        self.store.put(
            StoreEntry(
                StoreKey(provider.encode(), _FAMILY_EVENT, qualifier, timestamp=event.time),
                json.dumps(payload.to_wire(), separators=(",", ":")).encode(),
            )
        )

    def event_stats(self, provider_mac: str, window: tuple[int, int]) -> int:
        """Events for a provider with time in [window.start, window.end)."""
        provider = normalize_mac(provider_mac)
        start, end = window
        count = 0
        for entry in self.store.scan_row(provider.encode(), _FAMILY_EVENT):
            if start <= entry.key.timestamp < end:
                count += 1
        return count

    # -- maintenance ---------------------------------------------------------

    def registered_macs(self) -> list[str]:
        """Distinct MACs holding at least one record, any status."""
        macs = []
        last_row = None
        for entry in self.store.scan():
            if entry.key.family != _FAMILY_RECORD:
                continue
            if entry.key.row != last_row:
                last_row = entry.key.row
                macs.append(entry.key.row.decode())
        return macs

    def rebuild_bloom(self) -> BloomFilter:
        """Fresh filter from the registry's current MAC set (maintenance)."""
        rebuilt = BloomFilter.rebuilt_from(self.registered_macs(), self.bloom.m, self.bloom.k)
        self.bloom = rebuilt
        return rebuilt
