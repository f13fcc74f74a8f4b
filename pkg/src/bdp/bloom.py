"""Bloom filter negative cache and its false-positive arithmetic.

The filter answers "definitely not present" cheaply so that node
identifiers without stored data never cost a store lookup. False
positives are allowed (one wasted lookup); false negatives never happen
for an inserted key.

The k probe positions come from double hashing over two independent
64-bit key hashes h_a, h_b (xxh3 under two seeds), probing
h_a + i*h_b mod m. h_b is forced odd so the probe stride is invertible
for power-of-two m. The check must stay far cheaper than a store lookup
or the cache defeats its purpose.
"""

from __future__ import annotations

import math
import threading

from xxhash import xxh3_64_intdigest

_BIT_MASK = tuple(1 << i for i in range(8))
_SEED_B = 0x9E3779B97F4A7C15  # arbitrary fixed second seed (golden-ratio bits)


def bit_zero_probability(m: int, n: int, k: int) -> float:
    """Chance one particular bit is still 0 after n keys: (1 - 1/m)^(kn)."""
    _check_params(m, n, k)
    return math.exp(k * n * math.log1p(-1.0 / m)) if m > 1 else (1.0 if n == 0 else 0.0)


def predicted_fp_exact(m: int, n: int, k: int) -> float:
    """False-positive probability (1 - (1 - 1/m)^(kn))^k."""
    return (1.0 - bit_zero_probability(m, n, k)) ** k


def predicted_fp_approx(m: int, n: int, k: int) -> float:
    """Large-m approximation (1 - e^(-kn/m))^k."""
    _check_params(m, n, k)
    return (-math.expm1(-k * n / m)) ** k


def optimal_bit_count(expected_n: int, target_fp: float) -> int:
    """Smallest m hitting target_fp at expected_n keys: ceil(-n ln p / ln^2 2)."""
    if expected_n < 1:
        raise ValueError("expected_n must be >= 1")
    if not 0.0 < target_fp < 1.0:
        raise ValueError("target_fp must be in (0, 1)")
    return math.ceil(-expected_n * math.log(target_fp) / (math.log(2) ** 2))


def optimal_hash_count(m: int, expected_n: int) -> int:
    """Hash count minimizing the FP rate: round((m/n) ln 2), at least 1."""
    if m < 1 or expected_n < 1:
        raise ValueError("m and expected_n must be >= 1")
    return max(1, round((m / expected_n) * math.log(2)))


def _check_params(m: int, n: int, k: int) -> None:
    if m < 1:
        raise ValueError("m must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")


class BloomFilter:
    """m-bit vector with k probe positions per key.

    ``n`` counts insert operations (re-inserting a key increments it);
    the prediction formulas treat n that way too.
    """

    def __init__(self, m: int, k: int):
        _check_params(m, 0, k)
        self.m = m
        self.k = k
        self.n = 0
        self._bits = bytearray((m + 7) // 8)
        self._lock = threading.Lock()

    @classmethod
    def sized_for(cls, expected_n: int, target_fp: float) -> "BloomFilter":
        m = optimal_bit_count(expected_n, target_fp)
        return cls(m, optimal_hash_count(m, expected_n))

    def _positions(self, key: bytes | str):
        if isinstance(key, str):
            key = key.encode("utf-8")
        h_a = xxh3_64_intdigest(key)
        h_b = xxh3_64_intdigest(key, _SEED_B) | 1
        m = self.m
        return ((h_a + i * h_b) % m for i in range(self.k))

    def insert(self, key: bytes | str) -> None:
        positions = list(self._positions(key))
        with self._lock:
            bits = self._bits
            for pos in positions:
                bits[pos >> 3] |= 1 << (pos & 7)
            self.n += 1

    def maybe_contains(self, key: bytes | str) -> bool:
        # Hot path of every query: same probe sequence as _positions,
        # computed incrementally.
        if key.__class__ is str:
            key = key.encode("utf-8")
        step = xxh3_64_intdigest(key, _SEED_B) | 1
        m = self.m
        bits = self._bits
        pos = xxh3_64_intdigest(key) % m
        mask = _BIT_MASK
        for _ in range(self.k):
            if not bits[pos >> 3] & mask[pos & 7]:
                return False
            pos = (pos + step) % m
        return True

    def popcount(self) -> int:
        """Number of set bits (diagnostics and invariant checks)."""
        return sum(byte.bit_count() for byte in self._bits)

    def predicted_fp(self) -> float:
        """Eq-7 style prediction at the current insert count."""
        return predicted_fp_approx(self.m, self.n, self.k)

    @classmethod
    def rebuilt_from(cls, keys, m: int, k: int) -> "BloomFilter":
        """Fresh filter over an iterable of keys (maintenance rebuild)."""
        flt = cls(m, k)
        for key in keys:
            flt.insert(key)
        return flt
