"""Proximity data hub: typed data chunks bound to wireless node identifiers.

Core pieces: a sorted versioned key-value store, a Bloom negative cache
with its false-positive arithmetic, RSSI-to-distance ranging, the record
registry, proximity rules, the query pipeline, and a simulated radio
world so the whole flow runs without radio hardware.
"""

from .bloom import (
    BloomFilter,
    bit_zero_probability,
    optimal_bit_count,
    optimal_hash_count,
    predicted_fp_approx,
    predicted_fp_exact,
)
from .config import HubConfig
from .errors import BdpError, NotFoundError, ValidationError
from .kvstore import InvalidKeyError, SortedKVStore, StoreEntry, StoreKey
from .proximity import ProximityBrowser, QueryEntry, QueryResult
from .ranging import (
    DistanceEstimate,
    RangingSample,
    dbm_ratio,
    estimate_distance,
    linear_ratio,
    rssi_at_distance,
)
from .registry import (
    BdpRecord,
    BrowsingEvent,
    ChunkType,
    DataChunk,
    Registry,
    normalize_mac,
)
from .rules import Fingerprint, ProximityRule, RuleBook, evaluate
from .simworld import SimNode, SimWorld

__version__ = "0.1.0"

__all__ = [
    "BdpError",
    "BdpRecord",
    "BloomFilter",
    "BrowsingEvent",
    "ChunkType",
    "DataChunk",
    "DistanceEstimate",
    "Fingerprint",
    "HubConfig",
    "InvalidKeyError",
    "NotFoundError",
    "ProximityBrowser",
    "ProximityRule",
    "QueryEntry",
    "QueryResult",
    "RangingSample",
    "Registry",
    "RuleBook",
    "SimNode",
    "SimWorld",
    "SortedKVStore",
    "StoreEntry",
    "StoreKey",
    "ValidationError",
    "bit_zero_probability",
    "dbm_ratio",
    "estimate_distance",
    "evaluate",
    "linear_ratio",
    "normalize_mac",
    "optimal_bit_count",
    "optimal_hash_count",
    "predicted_fp_approx",
    "predicted_fp_exact",
    "rssi_at_distance",
]
