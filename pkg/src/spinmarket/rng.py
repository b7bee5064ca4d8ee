"""Seedable, portable random stream driving the simulation.

The generator is xoshiro256++ (Blackman & Vigna, public domain), with its
256-bit state expanded from a 64-bit seed by splitmix64.  On top of the raw
64-bit stream:

* bounded integers use masked rejection sampling (unbiased, 64-bit ops only),
* standard normals use the Box-Muller transform, consuming exactly two raw
  draws per normal: ``z = sqrt(-2 ln u1) * cos(2 pi u2)`` with
  ``u1 = ((a >> 11) + 1) * 2**-53`` in (0, 1] and ``u2 = (b >> 11) * 2**-53``
  in [0, 1).

The compiled kernel re-implements exactly this arithmetic, so both backends
consume the stream in the same order and produce bit-identical runs for the
same seed.  The algorithm is fixed by this module's tests; changing it is a
breaking change for every recorded run.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO_PI = 6.283185307179586
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53, exact

from math import cos, log, sqrt


def _splitmix64(x: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new_state, output)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x, z ^ (z >> 31)


def seed_state(seed: int) -> list[int]:
    """Expand a 64-bit seed into the four xoshiro256++ state words."""
    if not (0 <= seed < 1 << 64):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    x = seed
    words = []
    for _ in range(4):
        x, w = _splitmix64(x)
        words.append(w)
    if not any(words):  # all-zero state is invalid for xoshiro
        words[0] = 0x9E3779B97F4A7C15
    return words


class RandomStream:
    """xoshiro256++ stream with bounded-integer and standard-normal draws."""

    __slots__ = ("_s",)

    def __init__(self, seed: int):
        self._s = seed_state(seed)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (self._rotl((s0 + s3) & _MASK64, 23) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = self._rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    @staticmethod
    def _rotl(x: int, k: int) -> int:
        return ((x << k) | (x >> (64 - k))) & _MASK64

    def uniform_index(self, n: int) -> int:
        """Uniform integer in [0, n) via masked rejection (unbiased)."""
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        mask = (1 << (n - 1).bit_length()) - 1
        while True:
            v = self.next_u64() & mask
            if v < n:
                return v

    def normal(self) -> float:
        """One standard-normal draw (Box-Muller, two raw draws consumed)."""
        a = self.next_u64()
        b = self.next_u64()
        u1 = ((a >> 11) + 1) * _INV_2_53
        u2 = (b >> 11) * _INV_2_53
        return sqrt(-2.0 * log(u1)) * cos(_TWO_PI * u2)

    # State transport for the batch kernels (both backends mutate the array
    # in place and the stream resumes from it).

    def state_array(self) -> np.ndarray:
        return np.array(self._s, dtype=np.uint64)

    def set_state_array(self, state: np.ndarray) -> None:
        self._s = [int(w) for w in state]
