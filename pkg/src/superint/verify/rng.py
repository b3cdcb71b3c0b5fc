"""SplitMix64: a small counter-based 64-bit generator with labelled streams.

The stream for ``(seed, label)`` is fully determined by the seed and a
BLAKE2b digest of the label, so every sampled point or test jet can be
reproduced in any language from the seed alone:

    key   = seed XOR first 8 bytes (little endian) of blake2b(label, digest_size=8)
    z_i   = key + (i + 1) * 0x9E3779B97F4A7C15           (mod 2^64)
    out_i = mix(z_i)

with ``mix`` the standard SplitMix64 finalizer.  Uniform doubles take the top
53 bits of ``out_i``.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def label_key(label: str) -> int:
    return int.from_bytes(hashlib.blake2b(label.encode(), digest_size=8).digest(), "little")


class SplitMix64:
    """Deterministic stream of 64-bit words; ``split`` derives independent substreams."""

    def __init__(self, seed: int, label: str = ""):
        self.seed = seed & MASK
        self.label = label
        self.key = (self.seed ^ label_key(label)) & MASK
        self.counter = 0

    def split(self, label: str) -> "SplitMix64":
        sub = f"{self.label}/{label}" if self.label else label
        return SplitMix64(self.seed, sub)

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] (inclusive)."""
        return lo + self.next_u64() % (hi - lo + 1)

    def fraction(self, lo: int, hi: int, max_den: int = 7) -> Fraction:
        """Random rational num/den with 1 <= den <= max_den and lo <= value <= hi."""
        den = self.randint(1, max_den)
        return Fraction(self.randint(lo * den, hi * den), den)
