"""Pure-Python reference kernels for the chaotic map.

These define the bit-exact behaviour of the keystream; ``_ckernels.pyx`` is a
compiled transcription and must produce identical output.
"""
import math

import numpy as np

GUARD = 1e-12
ESCAPE_THRESHOLD = 1e-10
ESCAPE_VALUE = 0.123456789
SKIP_BITS = 16

BACKEND = "python"


def _guard(d):
    if abs(d) < GUARD:
        return -GUARD if d < 0.0 else GUARD
    return d


def _escape(v):
    return ESCAPE_VALUE if v < ESCAPE_THRESHOLD else v


def step(x, y, z, alpha, beta, gamma):
    """Advance the map one iteration; returns the new ``(x, y, z)``."""
    dx = x - x * x
    dy = y - y * y
    dz = z - z * z
    r = alpha * dx / _guard(dy)
    nx = r - math.floor(r)
    r = beta * dy / _guard(dz)
    ny = r - math.floor(r)
    r = gamma * dz / _guard(dx)
    nz = r - math.floor(r)
    return _escape(nx), _escape(ny), _escape(nz)


def orbit(alpha, beta, gamma, x, y, z, count):
    out = np.empty((count, 3), dtype=np.float64)
    for i in range(count):
        x, y, z = step(x, y, z, alpha, beta, gamma)
        out[i, 0] = x
        out[i, 1] = y
        out[i, 2] = z
    return out


def keystream_words(alpha, beta, gamma, x, y, z, count, word_bits, burn_in):
    scale = float(1 << (SKIP_BITS + word_bits))
    mask = (1 << word_bits) - 1
    for _ in range(burn_in):
        x, y, z = step(x, y, z, alpha, beta, gamma)
    out = np.empty(count, dtype=np.uint32)
    for i in range(count):
        x, y, z = step(x, y, z, alpha, beta, gamma)
        out[i] = int(x * scale) & mask
    return out
