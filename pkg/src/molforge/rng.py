"""Deterministic random numbers from SplitMix64 in counter mode.

Every draw is a pure function of (seed, counter), so results are
bit-reproducible across platforms and independent of how many values other
code consumed from a different generator. The full recipe:

    gamma = 0x9E3779B97F4A7C15
    out_i = mix64(seed + (counter + i + 1) * gamma)

    mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
              z ^= z >> 27; z *= 0x94D049BB133111EB
              z ^= z >> 31; return z

Uniform doubles take the top 53 bits; normals come from the Box-Muller
transform on consecutive uniform pairs; permutations argsort uniform keys.
Child streams are derived as mix64(seed ^ mix64(key)), which makes
(seed, sample index) -> stream reproducible regardless of scheduling.
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_U64 = np.uint64


def mix64(z: np.ndarray | int) -> np.ndarray:
    # 0-d inputs go through as 1-element arrays: numpy warns on wrapping
    # scalar uint64 multiplies but not on array ones, and wrapping is wanted.
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=np.uint64))
    z = z ^ (z >> _U64(30))
    z = z * _M1
    z = z ^ (z >> _U64(27))
    z = z * _M2
    z = z ^ (z >> _U64(31))
    return z[0] if scalar else z


class Rng:
    """SplitMix64 counter-mode generator; explicit 64-bit state = (seed, counter)."""

    def __init__(self, seed: int, counter: int = 0):
        self.seed = _U64(seed & 0xFFFFFFFFFFFFFFFF)
        self.counter = _U64(counter)

    def _raw(self, n: int) -> np.ndarray:
        idx = np.arange(1, n + 1, dtype=np.uint64) + self.counter
        self.counter = self.counter + _U64(n)
        return mix64(self.seed + idx * _GAMMA)

    def uniform(self, shape=()) -> np.ndarray | float:
        """Uniform doubles in (0, 1]."""
        n = int(np.prod(shape)) if shape else 1
        bits = self._raw(n)
        vals = ((bits >> _U64(11)).astype(np.float64) + 1.0) * (2.0 ** -53)
        return vals.reshape(shape) if shape else float(vals[0])

    def normal(self, shape=(), std: float = 1.0) -> np.ndarray | float:
        """Standard normals via Box-Muller on consecutive uniform pairs."""
        n = int(np.prod(shape)) if shape else 1
        pairs = (n + 1) // 2
        u = ((self._raw(2 * pairs) >> _U64(11)).astype(np.float64) + 1.0) * (2.0 ** -53)
        u1, u2 = u[0::2], u[1::2]
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n] * std
        return z.reshape(shape) if shape else float(z[0])

    def integers(self, low: int, high: int, shape=()) -> np.ndarray | int:
        """Integers in [low, high) by modular reduction (span << 2^64 here)."""
        span = _U64(high - low)
        n = int(np.prod(shape)) if shape else 1
        vals = (self._raw(n) % span).astype(np.int64) + low
        return vals.reshape(shape) if shape else int(vals[0])

    def permutation(self, n: int) -> np.ndarray:
        return np.argsort(self.uniform((n,)), kind="stable")

    def shuffle(self, items: list) -> list:
        return [items[i] for i in self.permutation(len(items))]

    def derive(self, key: int) -> "Rng":
        """Independent child stream for e.g. (seed, sample index)."""
        return Rng(int(self.seed ^ mix64(_U64(key & 0xFFFFFFFFFFFFFFFF))))
