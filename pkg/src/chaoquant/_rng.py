"""SplitMix64, vectorised over numpy uint64 arrays (wrap-around arithmetic)."""
import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO_POW_M53 = 2.0 ** -53


def splitmix64(seed, count):
    """Return the first ``count`` outputs of SplitMix64 seeded with ``seed``."""
    seed = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
    steps = np.arange(1, count + 1, dtype=np.uint64)
    z = seed + steps * GOLDEN_GAMMA
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def open_unit(seed, count):
    """Uniform doubles in the open interval (0, 1).

    The top 53 bits of each word map to ``(k + 0.5) / 2**53``, which never
    equals 0, 0.5 or 1.
    """
    k = splitmix64(seed, count) >> np.uint64(11)
    return (k.astype(np.float64) + 0.5) * _TWO_POW_M53
