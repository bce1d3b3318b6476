"""SplitMix64 (Steele, Lea & Flood 2014), block-evaluated with numpy.

Output k (k = 1, 2, ...) of a generator seeded with ``seed`` is
``mix(seed + k * GAMMA mod 2**64)``, so blocks of outputs can be computed
without a Python-level loop.
"""
from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MASK = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_BLOCK = 1024


def mix64(z: int) -> int:
    """Reference scalar finalizer."""
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def _mix_block(state: int, n: int) -> list[int]:
    ks = np.arange(1, n + 1, dtype=np.uint64)
    z = ks * np.uint64(GAMMA) + np.uint64(state)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return (z ^ (z >> np.uint64(31))).tolist()


class SplitMix64:
    __slots__ = ("_state", "_buf", "_pos")

    def __init__(self, seed: int):
        self._state = seed & MASK
        self._buf: list[int] = []
        self._pos = 0

    def next_u64(self) -> int:
        if self._pos == len(self._buf):
            self._buf = _mix_block(self._state, _BLOCK)
            self._state = (self._state + _BLOCK * GAMMA) & MASK
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return x

    def below(self, n: int) -> int:
        """Integer in [0, n) by multiply-shift."""
        return (self.next_u64() * n) >> 64

    def random(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())
