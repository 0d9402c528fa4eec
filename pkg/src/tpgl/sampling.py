"""Seeded, portable random sampling.

The generator is SplitMix64 (Steele, Lea & Flood's 64-bit mixer, the
sequence produced by `splitmix64` in the reference C implementation):
state advances by the golden-gamma constant 0x9E3779B97F4A7C15 and the
output is finalized with two xor-shift multiplies.  It is chosen over the
stdlib Mersenne Twister because the whole algorithm fits in a dozen lines
of documented u64 arithmetic, so scan reports can be replayed bit-for-bit
from any language.

Independent streams are derived per frame index:
``stream(seed, k)`` seeds a fresh generator with ``mix64(seed) XOR
mix64(GOLDEN_GAMMA * (k + 1))``, so per-frame work is reproducible
regardless of scheduling order.

Rationals are sampled as exact dyadic values ``(16 + m) * 2**e / 16``
(5-bit mantissa per octave), which spreads draws log-uniformly across the
configured range while staying exactly representable.
"""
from __future__ import annotations

from fractions import Fraction

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit generator with a 64-bit state."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection on the top multiple."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (MASK64 + 1) - ((MASK64 + 1) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n


def stream(seed: int, index: int) -> SplitMix64:
    """Independent generator for sub-task `index` of a run seeded `seed`."""
    return SplitMix64(mix64(seed) ^ mix64((GOLDEN_GAMMA * (index + 1)) & MASK64))


def log_uniform_fraction(rng: SplitMix64, lo: Fraction, hi: Fraction) -> Fraction:
    """Exact dyadic draw from [lo, hi], approximately uniform in log scale.

    Draws an octave ``e`` and a 16-step mantissa within it; values landing
    above ``hi`` are rejected and redrawn.  Degenerate ranges return ``lo``.
    """
    if not (0 < lo <= hi):
        raise ValueError("range must satisfy 0 < lo <= hi")
    if lo == hi:
        return lo
    octaves = 0
    span = hi / lo
    while span >= 2:
        octaves += 1
        span /= 2
    while True:
        e = rng.next_below(octaves + 1)
        m = rng.next_below(16)
        value = lo * (2**e) * Fraction(16 + m, 16)
        if value <= hi:
            return value


def positive_tuple(rng: SplitMix64, count: int, lo: Fraction, hi: Fraction) -> tuple[Fraction, ...]:
    return tuple(log_uniform_fraction(rng, lo, hi) for _ in range(count))
