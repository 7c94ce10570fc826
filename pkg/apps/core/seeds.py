"""
Per-trial seed derivation.

seed_stream(master, i) is the (i + 1)-th output of a splitmix64 generator
whose state starts at mix64(master):

    seed = mix64(mix64(master) + (i + 1) * GOLDEN  mod 2^64)

mix64 is a bijection of 64-bit words and GOLDEN is odd, so distinct
indices under one master seed never collide. mix64(0) = 0, so master 0
reproduces the reference splitmix64 stream seeded with 0.
"""

from typing import Final

from apps.core.exceptions import InvalidParameterError

MASK64: Final[int] = (1 << 64) - 1
GOLDEN: Final[int] = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def seed_stream(master_seed: int, index: int) -> int:
    if not 0 <= master_seed <= MASK64 or not 0 <= index <= MASK64:
        raise InvalidParameterError(
            'master_seed and index must be 64-bit unsigned integers',
            details={'master_seed': master_seed, 'index': index},
        )
    return mix64(mix64(master_seed) + (index + 1) * GOLDEN)
