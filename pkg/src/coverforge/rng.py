"""Deterministic random streams built on the SplitMix64 generator.

Every randomized routine in this package draws from a SplitMix64 stream
seeded explicitly, so a (master seed, trial index) pair pins down each
trial's randomness regardless of execution order or thread count.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 stream: 64-bit state, golden-ratio increment, mix output."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        self.state = (self.state + _GOLDEN) & _MASK64
        return _mix(self.state)

    def bits(self, k: int) -> int:
        """Return k uniform random bits packed into an int, low word first."""
        if k < 0:
            raise ValueError(f"bit count must be nonnegative, got {k}")
        out = 0
        for i in range((k + 63) // 64):
            out |= self.next64() << (64 * i)
        return out & ((1 << k) - 1)

    def randrange(self, bound: int) -> int:
        """Return a uniform int in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        width = (bound - 1).bit_length()
        while True:
            value = self.bits(width) if width else 0
            if value < bound:
                return value


def splitmix64(x: int) -> int:
    """First output of a SplitMix64 stream seeded with x."""
    return SplitMix64(x).next64()


def trial_seed(master_seed: int, index: int) -> int:
    """Per-trial seed: SplitMix64 output for master_seed XOR trial index."""
    return splitmix64((master_seed ^ index) & _MASK64)
