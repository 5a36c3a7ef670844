"""Randomness sources for measurement simulation.

``SeededCounter`` is a counter-based generator: the k-th draw of stream s is
a pure function of (master_seed, s, k), built from two rounds of the
splitmix64 finalizer. Streams never interact, so shots can be distributed
over any number of workers and still reproduce bit-identical results.

``SystemEntropy`` stands in for a physical noise tap (a sensor readout
feeding the otherwise deterministic machine): draws come from the OS
entropy pool and are not reproducible.
"""

from __future__ import annotations

import secrets

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    """One splitmix64 finalizer round (bijective on 64-bit integers)."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def counter_draw(master_seed: int, stream: int, index: int) -> float:
    """The index-th unit-interval draw of the named stream, in [0, 1)."""
    h = splitmix64((master_seed ^ (stream * _GOLDEN)) & _MASK64)
    h = splitmix64((h + index) & _MASK64)
    return (h >> 11) * 2.0**-53


class EntropyStream:
    """Sequential draws from one named stream, tracking the draw index."""

    __slots__ = ("_next_fn", "index")

    def __init__(self, next_fn):
        self._next_fn = next_fn
        self.index = 0

    def next_unit(self) -> float:
        """Next value in [0, 1); advances the draw index."""
        value = self._next_fn(self.index)
        self.index += 1
        return value


class SeededCounter:
    """Reproducible entropy: draws determined by (master_seed, stream, index)."""

    def __init__(self, master_seed: int):
        self.master_seed = int(master_seed) & _MASK64

    def unit(self, stream: int, index: int) -> float:
        return counter_draw(self.master_seed, stream, index)

    def stream(self, label: int) -> EntropyStream:
        seed = self.master_seed
        return EntropyStream(lambda k, s=label: counter_draw(seed, s, k))

    def __repr__(self) -> str:
        return f"SeededCounter({self.master_seed})"


class SystemEntropy:
    """Non-reproducible entropy from the OS pool; the stream label is ignored."""

    def stream(self, label: int) -> EntropyStream:
        return EntropyStream(lambda k: secrets.randbits(53) * 2.0**-53)

    def __repr__(self) -> str:
        return "SystemEntropy()"


EntropySource = SeededCounter | SystemEntropy
