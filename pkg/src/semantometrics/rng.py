"""SplitMix64, the fixed pseudo-random generator behind synthetic corpora.

SplitMix64 (Steele, Lea & Flood 2014) is counter based: output ``j`` of a
stream seeded with ``s`` is ``mix(s + (j + 1) * 0x9E3779B97F4A7C15)`` modulo
2**64, so blocks can be drawn with vectorized integer arithmetic and still
match the scalar sequence exactly.  Derived quantities use only integer
operations plus the exact ``(x >> 11) * 2**-53`` float conversion.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 2.0 ** -53


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Integer in ``[0, n)`` as ``next_u64() % n`` (bias below n / 2**64)."""
        return self.next_u64() % n

    def random(self) -> float:
        """Float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * _INV53

    def random_open0(self) -> float:
        """Float in ``(0, 1]``."""
        return ((self.next_u64() >> 11) + 1) * _INV53

    def spawn(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())

    def block(self, n: int) -> np.ndarray:
        """The next ``n`` outputs as a uint64 array, advancing the stream."""
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + n * GAMMA) & MASK64
        return z
