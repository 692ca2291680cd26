"""Reproducible random streams: SplitMix64 with Box-Muller normals.

Output ``k`` (0-based) of the stream for ``seed`` is
``mix(seed + (k + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` where ``mix`` is the
SplitMix64 finalizer (shifts 30/27/31, multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB). A uniform in (0, 1) is ``((x >> 11) + 0.5) * 2**-53``.
Normals come in pairs from consecutive uniforms ``(u1, u2)`` as
``sqrt(-2 ln u1) * (cos 2 pi u2, sin 2 pi u2)``. A complex normal takes the
pair as (real, imaginary). Child streams are seeded with
``mix(seed + (index + 1) * 0xD1B54A32D192ED03 mod 2**64)``.
"""

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
SPLIT = 0xD1B54A32D192ED03
MASK64 = (1 << 64) - 1


def mix64(z):
    """SplitMix64 finalizer on a Python int or a ``uint64`` array."""
    if isinstance(z, np.ndarray):
        z = z.astype(np.uint64)
        with np.errstate(over="ignore"):
            z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed, index):
    """Independent child seed; the same (seed, index) always gives the same child."""
    return mix64((int(seed) + (int(index) + 1) * SPLIT) & MASK64)


class SplitMix64:
    """Sequential SplitMix64 stream with vectorized draws."""

    def __init__(self, seed):
        self.seed = int(seed) & MASK64
        self.counter = 0

    def next_u64(self, count):
        k = np.arange(self.counter + 1, self.counter + 1 + count, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.seed) + k * np.uint64(GOLDEN)
        self.counter += count
        return mix64(z)

    def uniform(self, count):
        """Uniforms in the open interval (0, 1)."""
        x = self.next_u64(count) >> np.uint64(11)
        return (x.astype(np.float64) + 0.5) * 2.0 ** -53

    def normal(self, count):
        """Standard normals, drawn in Box-Muller pairs (an odd tail is discarded)."""
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs).reshape(pairs, 2)
        radius = np.sqrt(-2.0 * np.log(u[:, 0]))
        angle = 2.0 * np.pi * u[:, 1]
        z = np.empty((pairs, 2))
        z[:, 0] = radius * np.cos(angle)
        z[:, 1] = radius * np.sin(angle)
        return z.reshape(-1)[:count]

    def complex_normal(self, shape):
        """Complex normals with unit-variance real and imaginary parts, row-major fill."""
        size = int(np.prod(shape))
        z = self.normal(2 * size).reshape(size, 2)
        return (z[:, 0] + 1j * z[:, 1]).reshape(shape)
