"""Counter-based SplitMix64 streams, reproducible across platforms.

The generator is fully specified here so that golden outputs do not depend
on numpy's or Python's default generators. For an :class:`RngSpec` with
``seed`` and ``stream`` (all arithmetic mod 2**64)::

    mix64(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
               return z ^ (z >> 31)

    key      = mix64(seed + mix64(stream ^ 0x5851F42D4C957F2D))
    word_i   = mix64(key + (i + 1) * 0x9E3779B97F4A7C15)        i = 0, 1, ...
    uniform_i = (word_i >> 11) * 2**-53                          in [0, 1)

``word_i`` for ``key = seed`` is exactly the SplitMix64 output sequence.
Because draw ``i`` depends only on ``(key, i)``, any partition of the index
range into blocks reproduces the serial result bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
STREAM_SALT = 0x5851F42D4C957F2D
CHILD_GAMMA = 0xD1B54A32D192ED03
BLOCK_SIZE = 1 << 16

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = (np.uint64(k) for k in (30, 27, 31, 11))
_INV53 = 2.0 ** -53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def splitmix64_words(key: int, start: int, count: int) -> np.ndarray:
    """SplitMix64 outputs ``start .. start + count - 1`` for initial state ``key``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    return _mix64_array(np.uint64(key) + idx * np.uint64(GOLDEN_GAMMA))


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 0 <= v <= MASK64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    @property
    def key(self) -> int:
        return mix64(self.seed + mix64(self.stream ^ STREAM_SALT))

    def child(self, k: int) -> RngSpec:
        """Independent sub-stream ``k`` (used e.g. for one measurement setting)."""
        return RngSpec(self.seed, mix64(self.stream + (k + 1) * CHILD_GAMMA))

    def words(self, start: int, count: int) -> np.ndarray:
        """Raw 64-bit outputs ``start .. start + count - 1``."""
        return splitmix64_words(self.key, start, count)

    def uniforms(self, start: int, count: int) -> np.ndarray:
        return (self.words(start, count) >> _S11).astype(np.float64) * _INV53


def blocks(total: int, size: int = BLOCK_SIZE):
    """(start, count) pairs covering ``range(total)`` in fixed-size blocks."""
    for start in range(0, total, size):
        yield start, min(size, total - start)
