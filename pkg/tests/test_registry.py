"""Record registry: validation, status filtering, events, bloom coherence."""

import json
import random

import pytest

from bdp.bloom import BloomFilter
from bdp.errors import NotFoundError, ValidationError
from bdp.kvstore import SortedKVStore
from bdp.registry import (
    BdpRecord,
    BrowsingEvent,
    ChunkType,
    DataChunk,
    Registry,
    chunks_from_wire,
    normalize_mac,
)


@pytest.fixture
def registry():
    return Registry(SortedKVStore(), BloomFilter(4096, 6))


TEXT = [DataChunk.of("text", "sale")]


# -- mac normalization ---------------------------------------------------------

def test_normalize_accepts_upper_and_dashes():
    assert normalize_mac("AA-BB-CC-DD-EE-FF") == "aa:bb:cc:dd:ee:ff"
    assert normalize_mac("Aa:bB:cC:dd:EE:ff") == "aa:bb:cc:dd:ee:ff"
    assert normalize_mac("aa:bb:cc:dd:ee:ff") == "aa:bb:cc:dd:ee:ff"


@pytest.mark.parametrize(
    "bad",
    ["", "aabbccddeeff", "aa:bb:cc:dd:ee", "aa:bb:cc:dd:ee:ff:00",
     "gg:bb:cc:dd:ee:ff", "aa.bb.cc.dd.ee.ff", "aa:bb:cc:dd:ee:f", 42],
)
def test_normalize_rejects_malformed(bad):
    with pytest.raises(ValidationError) as exc:
        normalize_mac(bad)
    assert exc.value.code == "invalid_mac"


# -- chunk validation ------------------------------------------------------------

def test_chunk_type_enum_is_closed():
    with pytest.raises(ValidationError) as exc:
        DataChunk.of("video", "https://example.com/v.mp4")
    assert exc.value.code == "invalid_chunk_type"
    assert "video" in str(exc.value)


def test_all_seven_types_accepted():
    samples = {
        "text": "hello",
        "url": "https://example.com/page",
        "image": "https://example.com/p.png",
        "email": "who@example.com",
        "phone": "+15551234567",
        "fbprofile": "https://facebook.com/someone",
        "twprofile": "https://twitter.com/someone",
    }
    for kind, payload in samples.items():
        chunk = DataChunk.of(kind, payload)
        assert chunk.type is ChunkType(kind)
        assert chunk.to_wire() == {"type": kind, "data": payload}


@pytest.mark.parametrize("kind", ["url", "image", "fbprofile", "twprofile"])
def test_web_resource_chunks_need_absolute_urls(kind):
    with pytest.raises(ValidationError):
        DataChunk.of(kind, "not-a-url")
    with pytest.raises(ValidationError):
        DataChunk.of(kind, "/relative/path")


def test_chunk_data_must_be_nonempty():
    with pytest.raises(ValidationError):
        DataChunk.of("text", "")


def test_chunks_from_wire_rejects_junk():
    with pytest.raises(ValidationError):
        chunks_from_wire([])
    with pytest.raises(ValidationError):
        chunks_from_wire("nope")
    with pytest.raises(ValidationError):
        chunks_from_wire([{"type": "text"}])


# -- create / read back ------------------------------------------------------------

def test_create_then_fetch_roundtrip(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1000)
    records = registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    assert len(records) == 1
    record = records[0]
    assert record.record_id == rid
    assert record.mac == "aa:bb:cc:dd:ee:ff"
    assert record.timestamp_created == record.timestamp_modified == 1000
    assert record.status is True
    assert record.chunks == tuple(TEXT)


def test_create_normalizes_mac(registry):
    registry.create_record("AA-BB-CC-DD-EE-FF", TEXT, now=1)
    assert registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    # and the bloom filter was fed the canonical form
    assert registry.bloom.maybe_contains("aa:bb:cc:dd:ee:ff")


def test_create_rejects_bad_input(registry):
    with pytest.raises(ValidationError):
        registry.create_record("bogus", TEXT, now=1)
    with pytest.raises(ValidationError):
        registry.create_record("aa:bb:cc:dd:ee:ff", [], now=1)
    with pytest.raises(ValidationError) as exc:
        registry.create_record("aa:bb:cc:dd:ee:ff", [{"type": "video", "data": "x"}], now=1)
    assert exc.value.code == "invalid_chunk_type"


def test_record_ids_are_unique_hex32(registry):
    ids = {registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=i + 1) for i in range(64)}
    assert len(ids) == 64
    assert all(len(rid) == 32 and int(rid, 16) >= 0 for rid in ids)


# -- update ------------------------------------------------------------------------

def test_update_replaces_chunks_keeps_created(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=100)
    registry.update_record(rid, [{"type": "url", "data": "https://example.com"}], now=200)
    (record,) = registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    assert record.timestamp_created == 100
    assert record.timestamp_modified == 200
    assert record.chunks[0].type is ChunkType.URL


def test_update_unknown_id(registry):
    with pytest.raises(NotFoundError):
        registry.update_record("0" * 32, TEXT, now=5)


def test_update_empty_chunklist_rejected(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1)
    with pytest.raises(ValidationError):
        registry.update_record(rid, [], now=2)


def test_last_update_wins(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1)
    registry.update_record(rid, [{"type": "text", "data": "first"}], now=10)
    registry.update_record(rid, [{"type": "text", "data": "second"}], now=20)
    (record,) = registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    assert record.timestamp_modified == 20
    assert record.chunks[0].data == "second"


# -- status toggling ----------------------------------------------------------------

def test_deactivate_hides_record(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1)
    registry.set_status(rid, False, now=2)
    assert registry.get_active_by_mac("aa:bb:cc:dd:ee:ff") == []
    assert len(registry.get_records_by_mac("aa:bb:cc:dd:ee:ff", include_inactive=True)) == 1


def test_reactivate_restores_record(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1)
    registry.set_status(rid, False, now=2)
    registry.set_status(rid, True, now=3)
    (record,) = registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    assert record.status is True and record.timestamp_modified == 3


def test_redundant_set_status_still_bumps_modified(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1)
    registry.set_status(rid, True, now=7)
    (record,) = registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    assert record.timestamp_modified == 7


def test_set_status_unknown_id(registry):
    with pytest.raises(NotFoundError):
        registry.set_status("f" * 32, False, now=1)


# -- by-mac queries -------------------------------------------------------------------

def test_multiple_records_in_creation_order(registry):
    first = registry.create_record("aa:bb:cc:dd:ee:ff", [DataChunk.of("text", "one")], now=10)
    second = registry.create_record("aa:bb:cc:dd:ee:ff", [DataChunk.of("text", "two")], now=20)
    records = registry.get_active_by_mac("aa:bb:cc:dd:ee:ff")
    assert [r.record_id for r in records] == [first, second]


def test_unregistered_mac_is_empty_not_error(registry):
    assert registry.get_active_by_mac("00:11:22:33:44:55") == []


def test_active_filter_matches_bruteforce_oracle(registry):
    rng = random.Random(11)
    macs = [f"02:00:00:00:00:{i:02x}" for i in range(8)]
    ground_truth = []  # (mac, record_id, active)
    now = 0
    for _ in range(120):
        now += 1
        mac = rng.choice(macs)
        rid = registry.create_record(mac, TEXT, now=now)
        ground_truth.append([mac, rid, True])
    for entry in ground_truth:
        if rng.random() < 0.4:
            now += 1
            registry.set_status(entry[1], False, now=now)
            entry[2] = False
    for mac in macs:
        expected = [rid for m, rid, active in ground_truth if m == mac and active]
        got = [r.record_id for r in registry.get_active_by_mac(mac)]
        assert got == expected  # creation order == ground-truth insertion order


# -- wire format -----------------------------------------------------------------------

def test_wire_format_field_order_and_integer_status(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=5)
    record = registry.get_record(rid)
    wire = record.to_wire()
    assert list(wire) == [
        "recordID", "MAC_address", "timestamp_created",
        "timestamp_modified", "status", "data_array",
    ]
    assert wire["status"] == 1
    assert wire["data_array"] == [{"type": "text", "data": "sale"}]
    assert BdpRecord.from_json(record.to_json()) == record


def test_wire_status_zero_when_inactive(registry):
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=5)
    record = registry.set_status(rid, False, now=6)
    assert record.to_wire()["status"] == 0
    assert json.loads(record.to_json())["status"] == 0


# -- browsing events ---------------------------------------------------------------------

def test_event_counting(registry):
    provider = "aa:bb:cc:dd:ee:ff"
    for t in (10, 20, 30):
        registry.record_event(BrowsingEvent("02:00:00:00:00:01", provider, "r1", t))
    assert registry.event_stats(provider, (0, 100)) == 3
    assert registry.event_stats(provider, (15, 25)) == 1  # half-open window
    assert registry.event_stats(provider, (20, 20)) == 0
    assert registry.event_stats("00:00:00:00:00:99", (0, 100)) == 0


def test_events_with_same_time_all_counted(registry):
    provider = "aa:bb:cc:dd:ee:ff"
    for _ in range(3):
        registry.record_event(BrowsingEvent("02:00:00:00:00:01", provider, "r1", 50))
    assert registry.event_stats(provider, (50, 51)) == 3


def test_event_validation(registry):
    with pytest.raises(ValidationError):
        registry.record_event(BrowsingEvent("bogus", "aa:bb:cc:dd:ee:ff", "r", 1))
    with pytest.raises(ValidationError):
        registry.record_event(BrowsingEvent("aa:bb:cc:dd:ee:ff", "aa:bb:cc:dd:ee:ff", "r", 0))


# -- bloom coherence -----------------------------------------------------------------------

def test_every_registered_mac_reports_maybe_present(registry):
    rng = random.Random(21)
    ids = []
    macs = []
    for i in range(200):
        mac = f"02:{rng.randrange(256):02x}:00:00:00:{i % 256:02x}"
        macs.append(normalize_mac(mac))
        ids.append(registry.create_record(mac, TEXT, now=i + 1))
    for rid in rng.sample(ids, 80):
        registry.set_status(rid, False, now=10_000)
    assert all(registry.bloom.maybe_contains(mac) for mac in macs)


def test_rebuild_bloom_covers_existing_records(registry):
    macs = [f"02:00:00:00:01:{i:02x}" for i in range(30)]
    for i, mac in enumerate(macs):
        registry.create_record(mac, TEXT, now=i + 1)
    rebuilt = registry.rebuild_bloom()
    assert rebuilt is registry.bloom
    assert all(rebuilt.maybe_contains(mac) for mac in macs)
    assert sorted(registry.registered_macs()) == sorted(macs)


def test_persistent_registry_survives_reopen(tmp_path):
    path = tmp_path / "hub.log"
    store = SortedKVStore(path)
    registry = Registry(store, BloomFilter(1024, 4))
    rid = registry.create_record("aa:bb:cc:dd:ee:ff", TEXT, now=1)
    registry.record_event(BrowsingEvent("02:00:00:00:00:01", "aa:bb:cc:dd:ee:ff", rid, 5))
    store.close()

    reopened = Registry(SortedKVStore(path), BloomFilter(1024, 4))
    reopened.rebuild_bloom()
    assert [r.record_id for r in reopened.get_active_by_mac("aa:bb:cc:dd:ee:ff")] == [rid]
    assert reopened.event_stats("aa:bb:cc:dd:ee:ff", (0, 10)) == 1
    assert reopened.bloom.maybe_contains("aa:bb:cc:dd:ee:ff")
