"""Test signals and 16-bit PCM WAV input/output."""
from __future__ import annotations

import math
import wave
from dataclasses import dataclass

import numpy as np

from . import _rng
from .errors import (
    IoFailure,
    MalformedHeader,
    MissingSampleRate,
    NonFiniteInput,
    ParameterOutOfRange,
    UnsupportedFormat,
)

PCM16_SCALE = 32768.0


@dataclass(frozen=True, eq=False)
class SignalBuffer:
    """Finite real-valued samples; ``sample_rate`` is 0 for synthetic signals."""

    samples: np.ndarray
    sample_rate: int = 0

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.float64).ravel()
        if not np.all(np.isfinite(arr)):
            raise NonFiniteInput("signal contains NaN or infinity")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        if self.sample_rate < 0:
            raise ParameterOutOfRange("sample_rate must be >= 0", "sample_rate")

    def __len__(self):
        return len(self.samples)

    def __eq__(self, other):
        if not isinstance(other, SignalBuffer):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(self.samples, other.samples)

    def std(self) -> float:
        return float(np.std(self.samples)) if len(self.samples) else 0.0

    def peak(self) -> float:
        return float(np.max(np.abs(self.samples))) if len(self.samples) else 0.0


def laplacian_source(seed: int, count: int, sigma: float = 1.0) -> SignalBuffer:
    """I.i.d. zero-mean Laplacian samples with standard deviation ``sigma``.

    Inverse-CDF sampling driven by SplitMix64, so the stream is reproducible
    from ``seed`` alone.
    """
    if count < 0:
        raise ParameterOutOfRange(f"count={count} must be non-negative", "count")
    if not (math.isfinite(sigma) and sigma > 0):
        raise ParameterOutOfRange(f"sigma={sigma!r} must be positive", "sigma")
    u = _rng.open_unit(seed, count)
    return SignalBuffer(laplacian_inverse_cdf(u, sigma))


def laplacian_inverse_cdf(u, sigma):
    b = sigma / math.sqrt(2.0)
    d = u - 0.5
    return -b * np.sign(d) * np.log(1.0 - 2.0 * np.abs(d))


def uniform_source(seed: int, count: int, xmax: float = 1.0) -> SignalBuffer:
    """I.i.d. samples uniform on ``(-xmax, xmax)``."""
    if count < 0:
        raise ParameterOutOfRange(f"count={count} must be non-negative", "count")
    u = _rng.open_unit(seed, count)
    return SignalBuffer(xmax * (2.0 * u - 1.0))


def load_wav(path) -> SignalBuffer:
    """Read a 16-bit PCM WAV file; only the first channel is kept."""
    try:
        with open(path, "rb") as fh, wave.open(fh, "rb") as w:
            nchannels = w.getnchannels()
            sampwidth = w.getsampwidth()
            rate = w.getframerate()
            frames = w.readframes(w.getnframes())
    except wave.Error as exc:
        if "unknown format" in str(exc):
            raise UnsupportedFormat(f"{path}: only integer PCM is supported ({exc})") from exc
        raise MalformedHeader(f"{path}: {exc}") from exc
    except EOFError as exc:
        raise MalformedHeader(f"{path}: truncated header") from exc
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    if sampwidth != 2:
        raise UnsupportedFormat(f"{path}: {8 * sampwidth}-bit samples, expected 16-bit")
    if nchannels < 1:
        raise MalformedHeader(f"{path}: no channels")
    usable = len(frames) - len(frames) % (2 * nchannels)
    data = np.frombuffer(frames[:usable], dtype="<i2").reshape(-1, nchannels)[:, 0]
    return SignalBuffer(data / PCM16_SCALE, rate)


def to_pcm16(samples) -> np.ndarray:
    x = np.clip(np.asarray(samples, dtype=np.float64), -1.0, 1.0 - 2.0**-15)
    return np.rint(x * PCM16_SCALE).astype("<i2")


def save_wav(signal: SignalBuffer, path) -> None:
    """Write ``signal`` as mono 16-bit PCM, clamping to the representable range."""
    if signal.sample_rate <= 0:
        raise MissingSampleRate("cannot write a WAV file without a sample rate")
    pcm = to_pcm16(signal.samples)
    try:
        with open(path, "wb") as fh, wave.open(fh, "wb") as w:
            w.setnchannels(1)
            w.setsampwidth(2)
            w.setframerate(int(signal.sample_rate))
            w.writeframes(pcm.tobytes())
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc
