"""Midrise uniform and mu-law companding quantizers, characteristics, SQNR.

All quantizer functions accept scalars or numpy arrays. Scalar input gives
a scalar result.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import (
    DistortionZero,
    IndexOutOfRange,
    IoFailure,
    LengthMismatch,
    NonFiniteInput,
    ParameterOutOfRange,
    ZeroSignalPower,
)


def _check_spec(bits, xmax):
    if not isinstance(bits, (int, np.integer)) or bits < 1:
        raise ParameterOutOfRange(f"bits={bits!r} must be an integer >= 1", "bits")
    if not (math.isfinite(xmax) and xmax > 0):
        raise ParameterOutOfRange(f"xmax={xmax!r} must be positive and finite", "xmax")


def _finite(x):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("input contains NaN or infinity")
    return arr


def _unwrap(arr):
    return arr.item() if arr.ndim == 0 else arr


@dataclass(frozen=True)
class UniformQuantizer:
    """Midrise uniform quantizer with ``2**bits`` levels on ``[-xmax, xmax]``."""

    bits: int
    xmax: float = 1.0

    def __post_init__(self):
        _check_spec(self.bits, self.xmax)

    @property
    def levels(self) -> int:
        return 1 << self.bits

    @property
    def step(self) -> float:
        return 2.0 * self.xmax / self.levels

    def quantize_index(self, x):
        arr = _finite(x)
        idx = np.floor((arr + self.xmax) / self.step)
        idx = np.clip(idx, 0, self.levels - 1).astype(np.int64)
        return _unwrap(idx)

    def reconstruct(self, index):
        idx = np.asarray(index)
        if idx.size and (idx.min() < 0 or idx.max() >= self.levels):
            raise IndexOutOfRange(f"index outside [0, {self.levels})")
        return _unwrap(-self.xmax + (idx + 0.5) * self.step)

    def reconstruction_levels(self) -> np.ndarray:
        return self.reconstruct(np.arange(self.levels))

    def decision_boundaries(self) -> np.ndarray:
        """Interior thresholds between adjacent cells."""
        return -self.xmax + np.arange(1, self.levels) * self.step

    def __call__(self, x):
        return self.reconstruct(self.quantize_index(x))


@dataclass(frozen=True)
class MuLawQuantizer:
    """Continuous mu-law compressor, midrise uniform quantizer, expander."""

    bits: int
    xmax: float = 1.0
    mu: float = 255.0

    def __post_init__(self):
        _check_spec(self.bits, self.xmax)
        if not (math.isfinite(self.mu) and self.mu > 0):
            raise ParameterOutOfRange(f"mu={self.mu!r} must be positive", "mu")

    @property
    def uniform(self) -> UniformQuantizer:
        return UniformQuantizer(self.bits, self.xmax)

    def compress(self, x):
        arr = np.clip(_finite(x), -self.xmax, self.xmax)
        y = self.xmax * np.sign(arr) * np.log1p(self.mu * np.abs(arr) / self.xmax) / math.log1p(self.mu)
        return _unwrap(y)

    def expand(self, y):
        arr = np.clip(_finite(y), -self.xmax, self.xmax)
        x = self.xmax * np.sign(arr) * np.expm1(np.abs(arr) / self.xmax * math.log1p(self.mu)) / self.mu
        return _unwrap(x)

    def quantize_index(self, x):
        return self.uniform.quantize_index(self.compress(x))

    def reconstruct(self, index):
        return self.expand(self.uniform.reconstruct(index))

    def reconstruction_levels(self) -> np.ndarray:
        return self.reconstruct(np.arange(self.uniform.levels))

    def decision_boundaries(self) -> np.ndarray:
        return self.expand(self.uniform.decision_boundaries())

    def __call__(self, x):
        return self.reconstruct(self.quantize_index(x))


# functional aliases


def quantize_index(x, spec: UniformQuantizer):
    return spec.quantize_index(x)


def reconstruct(index, spec: UniformQuantizer):
    return spec.reconstruct(index)


def mu_compress(x, spec: MuLawQuantizer):
    return spec.compress(x)


def mu_expand(y, spec: MuLawQuantizer):
    return spec.expand(y)


def quantize_nonuniform(x, spec: MuLawQuantizer):
    return spec(x)


def _samples(signal):
    samples = getattr(signal, "samples", signal)
    return np.asarray(samples, dtype=np.float64).ravel()


def sqnr_db(original, reconstructed) -> float:
    """``10*log10(sum(x**2) / sum((x - y)**2))``.

    Accepts :class:`~chaoquant.sources.SignalBuffer` objects or arrays.
    """
    x = _samples(original)
    y = _samples(reconstructed)
    if len(x) != len(y):
        raise LengthMismatch(f"signal lengths differ: {len(x)} != {len(y)}")
    if len(x) == 0:
        raise LengthMismatch("signals are empty")
    signal_power = float(np.dot(x, x))
    if signal_power == 0.0:
        raise ZeroSignalPower("original signal has zero power")
    e = x - y
    noise_power = float(np.dot(e, e))
    if noise_power == 0.0:
        raise DistortionZero("reconstruction is identical to the original")
    return 10.0 * math.log10(signal_power / noise_power)


@dataclass(frozen=True, eq=False)
class CharacteristicTable:
    inputs: np.ndarray
    outputs: np.ndarray

    def __len__(self):
        return len(self.inputs)

    @property
    def rows(self):
        return list(zip(self.inputs.tolist(), self.outputs.tolist()))

    def step_abscissae(self) -> np.ndarray:
        """Grid inputs at which the output changes from the previous point."""
        changed = np.flatnonzero(np.diff(self.outputs) != 0) + 1
        return self.inputs[changed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["input", "output"])
        for x, y in zip(self.inputs, self.outputs):
            writer.writerow([_decimal(x), _decimal(y)])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        try:
            Path(path).write_text(self.to_csv())
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc

    @classmethod
    def from_csv(cls, text: str) -> "CharacteristicTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != ["input", "output"]:
            raise ValueError(f"unexpected header {header!r}")
        pairs = np.array([[float(a), float(b)] for a, b in reader], dtype=np.float64).reshape(-1, 2)
        return cls(pairs[:, 0], pairs[:, 1])


def _decimal(v):
    # shortest round-trip digits, never scientific notation
    return np.format_float_positional(float(v), unique=True, trim="-")


def characteristic(quantizer: Callable, xmin: float, xmax_plot: float, points: int) -> CharacteristicTable:
    """Evaluate ``quantizer`` on ``points`` evenly spaced inputs in ``[xmin, xmax_plot]``."""
    if not (math.isfinite(xmin) and math.isfinite(xmax_plot) and xmin < xmax_plot):
        raise ParameterOutOfRange(f"need xmin < xmax_plot, got {xmin!r}, {xmax_plot!r}", "xmin")
    if points < 2:
        raise ParameterOutOfRange(f"points={points!r} must be >= 2", "points")
    grid = np.linspace(xmin, xmax_plot, int(points))
    outputs = np.asarray(quantizer(grid), dtype=np.float64)
    return CharacteristicTable(grid, outputs)
