"""Seeded constructions: uniform random, two-period and disturbed functions.

All randomness comes from SplitMix64.  Table bit ``i`` of
``random_function(n, seed)`` is bit ``i % 64`` of the ``i // 64``-th output of
the generator started at ``seed``; for n < 6 only the low 2^n bits of the
first output are used.
"""

from __future__ import annotations

import numpy as np

from .boolean import MAX_N, BooleanFunction
from .errors import InvalidDimension, TooManyFlips

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """SplitMix64: 64-bit state advanced by the golden gamma, then mixed."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased (Lemire's method)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        m = self.next_u64() * bound
        low = m & MASK64
        if low < bound:
            threshold = (-bound) % bound
            while low < threshold:
                m = self.next_u64() * bound
                low = m & MASK64
        return m >> 64


def splitmix64_outputs(seeds, count: int) -> np.ndarray:
    """First ``count`` outputs for each seed; shape ``(len(seeds), count)``."""
    seeds = np.atleast_1d(np.asarray(seeds, dtype=np.uint64))
    steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA)
    with np.errstate(over="ignore"):
        return mix64_array(seeds[:, None] + steps[None, :])


def stream_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th parallel stream derived from ``seed``.

    The XOR-with-golden-multiple key is passed through the mixer: without it,
    keys that differ by a multiple of the gamma would yield overlapping
    SplitMix64 sequences.
    """
    return mix64((seed ^ (GOLDEN_GAMMA * index)) & MASK64)


def stream_seeds(seed: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.uint64)
    with np.errstate(over="ignore"):
        keys = np.uint64(seed & MASK64) ^ (idx * np.uint64(GOLDEN_GAMMA))
        return mix64_array(keys)


def random_bits_batch(n: int, seeds) -> np.ndarray:
    """Truth tables (uint8 0/1, shape ``(len(seeds), 2**n)``), one per seed."""
    size = 1 << n
    words = splitmix64_outputs(seeds, max(1, size // 64))
    raw = words.astype("<u8").view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little")[:, :size]


def random_signs_batch(n: int, seeds) -> np.ndarray:
    return 1 - 2 * random_bits_batch(n, seeds).astype(np.int64)


def _check_dimension(n: int) -> None:
    if not 2 <= n <= MAX_N:
        raise InvalidDimension(f"n must lie in [2, {MAX_N}], got {n}")


def random_function(n: int, seed: int) -> BooleanFunction:
    _check_dimension(n)
    size = 1 << n
    words = splitmix64_outputs([seed & MASK64], max(1, size // 64))[0]
    raw = words.astype("<u8").tobytes()
    if n < 3:
        return BooleanFunction(n, bytes([raw[0] & ((1 << size) - 1)]))
    return BooleanFunction(n, raw[: size // 8])


def two_period_extend(g: BooleanFunction) -> BooleanFunction:
    """f(x, b) = g(x): the new coordinate is the top index bit."""
    if g.n < 2:
        raise InvalidDimension("the inner function needs at least 2 variables")
    _check_dimension(g.n + 1)
    if g.n >= 3:
        return BooleanFunction(g.n + 1, g.packed * 2)
    return BooleanFunction.from_bits(np.concatenate([g.bits, g.bits]), g.n + 1)


def disturbance_sites(n: int, r: int, seed: int) -> np.ndarray:
    """``r`` distinct points drawn by a partial Fisher-Yates shuffle."""
    size = 1 << n
    if r < 0 or r > size:
        raise TooManyFlips(f"cannot flip {r} of {size} table bits")
    rng = SplitMix64(seed)
    moved: dict[int, int] = {}
    sites = np.empty(r, dtype=np.int64)
    for i in range(r):
        j = i + rng.randbelow(size - i)
        sites[i] = moved.get(j, j)
        moved[j] = moved.get(i, i)
    return sites


def disturb(f: BooleanFunction, r: int, seed: int) -> BooleanFunction:
    """Flip the table of ``f`` at ``r`` distinct uniformly chosen points."""
    sites = disturbance_sites(f.n, r, seed)
    if r == 0:
        return f
    bits = f.bits.copy()
    bits[sites] ^= 1
    return BooleanFunction.from_bits(bits, f.n)
