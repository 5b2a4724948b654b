"""Portable 64-bit linear congruential generator.

state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64;
a uniform draw uses the top 53 bits, (state >> 11) / 2^53.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407


class Lcg:
    def __init__(self, seed: int = 0):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & _MASK
        return self.state

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * ((self.next_u64() >> 11) / 9007199254740992.0)

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi)."""
        if hi <= lo:
            raise ValueError("empty integer range")
        return lo + int(self.uniform() * (hi - lo))

    def choice(self, seq):
        return seq[self.integer(0, len(seq))]
