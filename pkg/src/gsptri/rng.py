"""Deterministic 64-bit generator used for every seeded sample in the package.

The generator is SplitMix64, written out here in full so results replicate on
any platform.  State is a 64-bit integer; each draw does

    state <- (state + 0x9E3779B97F4A7C15) mod 2**64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2**64
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2**64
    output <- z XOR (z >> 31)

Bounded draws take the output modulo the range size; the slight bias is
irrelevant here because only determinism matters, never statistics.
Sub-streams for independent sampling tasks are derived with
:meth:`SplitMix64.substream`, which reseeds from a draw of a generator keyed
by (seed, label-hash), so access order cannot change any sample.
"""

from __future__ import annotations

from fractions import Fraction

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self.state = self.seed

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _mix(self.state)

    def next_below(self, n: int) -> int:
        """Uniform-ish draw in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def next_int(self, lo: int, hi: int) -> int:
        """Draw in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_below(hi - lo + 1)

    def next_nonzero_rational(self, max_num: int = 9, max_den: int = 4) -> Fraction:
        """Nonzero numerator in [-max_num, max_num], denominator in [1, max_den]."""
        num = 0
        while num == 0:
            num = self.next_int(-max_num, max_num)
        den = self.next_int(1, max_den)
        return Fraction(num, den)

    def substream(self, label: str) -> "SplitMix64":
        """Independent child stream; deterministic in (seed, label) only."""
        h = 0
        for ch in label.encode("utf-8"):
            h = (h * 131 + ch) & _MASK
        return SplitMix64(_mix(self.seed ^ _mix(h)))
