"""Three-dimensional discrete chaotic map and keystream generation.

The map iterates

    x' = alpha * (x - x^2) / (y - y^2)  mod 1
    y' = beta  * (y - y^2) / (z - z^2)  mod 1
    z' = gamma * (z - z^2) / (x - x^2)  mod 1

with ``mod 1`` taken as ``r - floor(r)``. Denominators smaller than 1e-12
in magnitude are replaced by +/-1e-12, and a component that falls below
1e-10 is reset to 0.123456789 so the orbit cannot lock onto zero.

Arithmetic is plain IEEE-754 double precision in a fixed operation order;
encoder and decoder rely on regenerating the same bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import _rng
from ._backend import kernels
from .errors import IoFailure, ParameterOutOfRange

BURN_IN = 1000
MAX_WORD_BITS = 24

# keygen draws parameters and initial values well inside the chaotic region
KEYGEN_PARAM_RANGE = (0.6, 3.9)
KEYGEN_INITIAL_RANGE = (0.05, 0.95)


@dataclass(frozen=True)
class ChaoticKey:
    alpha: float
    beta: float
    gamma: float
    x0: float
    y0: float
    z0: float

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.x0, self.y0, self.z0)

    def replace(self, **changes) -> "ChaoticKey":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ChaoticKey(**values)


@dataclass(frozen=True)
class ChaoticState:
    x: float
    y: float
    z: float


@dataclass(frozen=True, eq=False)
class Keystream:
    words: np.ndarray
    word_bits: int

    def __len__(self):
        return len(self.words)

    def __getitem__(self, i):
        return self.words[i]

    def __eq__(self, other):
        if not isinstance(other, Keystream):
            return NotImplemented
        return self.word_bits == other.word_bits and np.array_equal(self.words, other.words)


def validate_key(key: ChaoticKey) -> ChaoticKey:
    """Return ``key`` unchanged if it lies in the chaotic regime.

    Raises :class:`ParameterOutOfRange` naming the first offending field:
    control parameters must satisfy ``0.5 < p < 4`` and initial values must
    lie in ``[0, 1]``.
    """
    for name in ("alpha", "beta", "gamma"):
        v = getattr(key, name)
        if not (math.isfinite(v) and 0.5 < v < 4.0):
            raise ParameterOutOfRange(f"{name}={v!r} outside the open interval (0.5, 4)", name)
    for name in ("x0", "y0", "z0"):
        v = getattr(key, name)
        if not (math.isfinite(v) and 0.0 <= v <= 1.0):
            raise ParameterOutOfRange(f"{name}={v!r} outside [0, 1]", name)
    return key


def iterate_map(state: ChaoticState, key: ChaoticKey) -> ChaoticState:
    x, y, z = kernels.step(state.x, state.y, state.z, key.alpha, key.beta, key.gamma)
    return ChaoticState(x, y, z)


def orbit(key: ChaoticKey, count: int) -> np.ndarray:
    """States after each of the first ``count`` iterations, shape ``(count, 3)``."""
    validate_key(key)
    if count < 0:
        raise ParameterOutOfRange(f"count={count} must be non-negative", "count")
    return kernels.orbit(*key.as_tuple(), count)


def generate_keystream(key: ChaoticKey, count: int, word_bits: int) -> Keystream:
    """Generate ``count`` words of ``word_bits`` bits from the chaotic orbit.

    After discarding :data:`BURN_IN` iterations, each further iteration
    yields one word: the ``word_bits`` bits of ``x`` that follow its leading
    16 fractional bits, i.e. ``floor(x * 2**(16 + word_bits)) mod 2**word_bits``.
    The leading bits are skipped because the invariant density of ``x`` is
    far from flat; the deeper bits are uniform.
    """
    validate_key(key)
    if not isinstance(word_bits, (int, np.integer)) or not 1 <= word_bits <= MAX_WORD_BITS:
        raise ParameterOutOfRange(f"word_bits={word_bits!r} outside [1, {MAX_WORD_BITS}]", "word_bits")
    if count < 0:
        raise ParameterOutOfRange(f"count={count} must be non-negative", "count")
    words = kernels.keystream_words(*key.as_tuple(), int(count), int(word_bits), BURN_IN)
    return Keystream(words, int(word_bits))


def key_space_bits(precision: float, num_components: int) -> float:
    """log2 of the number of keys distinguishable at ``precision`` per component."""
    if not (0.0 < precision < 1.0):
        raise ParameterOutOfRange(f"precision={precision!r} must lie in (0, 1)", "precision")
    if num_components < 1:
        raise ParameterOutOfRange(f"num_components={num_components!r} must be >= 1", "num_components")
    return -num_components * math.log2(precision)


def is_degenerate(key: ChaoticKey, probe: int = 4096) -> bool:
    """True when the orbit has fallen onto a short periodic cycle.

    Some parameter choices inside the nominal range have stable periodic
    windows; their keystreams repeat a handful of words. A chaotic orbit
    gives nearly ``probe`` distinct 16-bit words, a periodic one only a few.
    """
    words = generate_keystream(key, probe, 16).words
    return len(np.unique(words)) < probe // 2


def key_from_seed(seed: int) -> ChaoticKey:
    """Derive a key from a 64-bit seed via SplitMix64.

    Successive groups of six draws are tried until one gives a chaotic
    (non-periodic) orbit.
    """
    plo, phi = KEYGEN_PARAM_RANGE
    ilo, ihi = KEYGEN_INITIAL_RANGE
    draws = 6
    while True:
        u = _rng.open_unit(seed, draws)[-6:]
        params = [plo + float(v) * (phi - plo) for v in u[:3]]
        initials = [ilo + float(v) * (ihi - ilo) for v in u[3:]]
        key = ChaoticKey(*params, *initials)
        if not is_degenerate(key):
            return key
        draws += 6


def parse_key(text: str) -> ChaoticKey:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ParameterOutOfRange(f"key line {lineno}: not a decimal number: {line!r}") from None
    if len(values) != 6:
        raise ParameterOutOfRange(f"key file must hold 6 values, found {len(values)}")
    return validate_key(ChaoticKey(*values))


def format_key(key: ChaoticKey) -> str:
    lines = ["# chaotic key: alpha, beta, gamma, x0, y0, z0"]
    lines += [repr(float(v)) for v in key.as_tuple()]
    return "\n".join(lines) + "\n"


def read_key(path) -> ChaoticKey:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailure(f"cannot read key file {path}: {exc.strerror or exc}") from exc
    return parse_key(text)


def write_key(key: ChaoticKey, path) -> None:
    try:
        Path(path).write_text(format_key(key))
    except OSError as exc:
        raise IoFailure(f"cannot write key file {path}: {exc.strerror or exc}") from exc
