"""Chaotic uniform quantizer codec and the ``.cqz`` stream format.

Encoder, per sample ``n``:

1. ``i = Q1.quantize_index(x)``          fine uniform quantization
2. ``e = i ^ k[n]``                      XOR with a q1_bits keystream word
3. ``v = Q1.reconstruct(e)``             encrypted discrete-time signal
4. ``j = Q2.quantize_index(v)``          coarse requantization, transmitted

Decoder: ``w = Q2.reconstruct(j)``, snap ``w`` back to the Q1 grid, XOR with
the same keystream word, reconstruct on Q1. When ``q2_bits == q1_bits`` the
round trip equals plain Q1 quantization exactly; for ``q2_bits < q1_bits``
the XOR scrambles the coarse-stage error, so decoded SQNR is whatever it is.

Stream layout (little-endian, 28-byte header)::

    magic "CQZ1" | version u8 = 1 | q1_bits u8 | q2_bits u8 | reserved u8 = 0
    sample_rate u32 | num_samples u64 | xmax f64 | payload

The payload packs q2_bits-wide codewords most-significant-bit first, the
last byte zero-padded.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    IoFailure,
    LengthMismatch,
    MalformedStream,
    ParameterOutOfRange,
    WordWidthMismatch,
)
from .keystream import ChaoticKey, Keystream, generate_keystream, validate_key
from .quantizers import CharacteristicTable, UniformQuantizer, characteristic
from .sources import SignalBuffer

MAGIC = b"CQZ1"
VERSION = 1
MAX_BITS = 16
HEADER = struct.Struct("<4sBBBBIQd")


@dataclass(frozen=True)
class CodecConfig:
    q1_bits: int
    q2_bits: int
    xmax: float = 1.0

    def __post_init__(self):
        for name in ("q1_bits", "q2_bits"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 1 <= v <= MAX_BITS:
                raise ParameterOutOfRange(f"{name}={v!r} outside [1, {MAX_BITS}]", name)
        if self.q2_bits > self.q1_bits:
            raise ParameterOutOfRange(
                f"q2_bits={self.q2_bits} exceeds q1_bits={self.q1_bits}", "q2_bits"
            )
        if not (math.isfinite(self.xmax) and self.xmax > 0):
            raise ParameterOutOfRange(f"xmax={self.xmax!r} must be positive and finite", "xmax")

    @property
    def fine(self) -> UniformQuantizer:
        return UniformQuantizer(self.q1_bits, self.xmax)

    @property
    def coarse(self) -> UniformQuantizer:
        return UniformQuantizer(self.q2_bits, self.xmax)


def pack_codewords(codes, bits: int) -> bytes:
    codes = np.asarray(codes, dtype=np.uint32)
    if codes.size == 0:
        return b""
    shifts = np.arange(bits - 1, -1, -1, dtype=np.uint32)
    planes = ((codes[:, None] >> shifts) & 1).astype(np.uint8)
    return np.packbits(planes.ravel()).tobytes()


def unpack_codewords(payload: bytes, bits: int, count: int) -> np.ndarray:
    if count == 0:
        return np.zeros(0, dtype=np.uint32)
    planes = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), count=count * bits)
    weights = (1 << np.arange(bits - 1, -1, -1)).astype(np.uint32)
    return planes.reshape(count, bits).astype(np.uint32) @ weights


def _payload_size(num_samples, bits):
    return (num_samples * bits + 7) // 8


@dataclass(frozen=True)
class EncodedStream:
    q1_bits: int
    q2_bits: int
    xmax: float
    sample_rate: int
    num_samples: int
    payload: bytes

    def __post_init__(self):
        try:
            CodecConfig(self.q1_bits, self.q2_bits, self.xmax)
        except ParameterOutOfRange as exc:
            raise MalformedStream(f"bad header: {exc}") from None
        if not 0 <= self.sample_rate < 2**32:
            raise MalformedStream(f"bad header: sample_rate={self.sample_rate}")
        if not 0 <= self.num_samples < 2**64:
            raise MalformedStream(f"bad header: num_samples={self.num_samples}")
        expected = _payload_size(self.num_samples, self.q2_bits)
        if len(self.payload) != expected:
            raise MalformedStream(f"payload is {len(self.payload)} bytes, header implies {expected}")
        spare = expected * 8 - self.num_samples * self.q2_bits
        if spare and self.payload[-1] & ((1 << spare) - 1):
            raise MalformedStream("nonzero padding bits in final payload byte")

    @property
    def config(self) -> CodecConfig:
        return CodecConfig(self.q1_bits, self.q2_bits, self.xmax)

    @classmethod
    def from_codewords(cls, codes, config: CodecConfig, sample_rate: int = 0) -> "EncodedStream":
        codes = np.asarray(codes)
        return cls(
            config.q1_bits,
            config.q2_bits,
            float(config.xmax),
            int(sample_rate),
            int(codes.size),
            pack_codewords(codes, config.q2_bits),
        )

    def codewords(self) -> np.ndarray:
        return unpack_codewords(self.payload, self.q2_bits, self.num_samples)

    def to_bytes(self) -> bytes:
        header = HEADER.pack(
            MAGIC, VERSION, self.q1_bits, self.q2_bits, 0,
            self.sample_rate, self.num_samples, self.xmax,
        )
        return header + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> "EncodedStream":
        if len(data) < HEADER.size:
            raise MalformedStream(f"stream is {len(data)} bytes, shorter than the header")
        magic, version, q1, q2, reserved, rate, n, xmax = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise MalformedStream(f"bad magic {magic!r}")
        if version != VERSION:
            raise MalformedStream(f"unsupported version {version}")
        if reserved != 0:
            raise MalformedStream("reserved header byte is nonzero")
        return cls(q1, q2, xmax, rate, n, bytes(data[HEADER.size:]))

    def write(self, path) -> None:
        try:
            Path(path).write_bytes(self.to_bytes())
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc

    @classmethod
    def read(cls, path) -> "EncodedStream":
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
        return cls.from_bytes(data)


def encrypt_indices(indices, keystream: Keystream, bits: int | None = None) -> np.ndarray:
    """XOR ``indices`` element-wise with the keystream words.

    ``bits``, when given, is the index width the caller expects and must
    equal the keystream word width.
    """
    idx = np.asarray(indices, dtype=np.int64)
    words = np.asarray(keystream.words, dtype=np.int64)
    if bits is not None and bits != keystream.word_bits:
        raise WordWidthMismatch(f"keystream words are {keystream.word_bits} bits, indices {bits}")
    if idx.shape != words.shape:
        raise LengthMismatch(f"{idx.size} indices but {words.size} keystream words")
    if idx.size and (idx.min() < 0 or idx.max() >= 1 << keystream.word_bits):
        raise WordWidthMismatch(f"index does not fit in {keystream.word_bits} bits")
    return idx ^ words


def encrypted_levels(samples, words, config: CodecConfig) -> np.ndarray:
    """Stages 1-3: the encrypted Q1 reconstruction fed to the coarse quantizer."""
    fine = config.fine
    idx = np.asarray(fine.quantize_index(np.asarray(samples, dtype=np.float64)), dtype=np.int64)
    return np.asarray(fine.reconstruct(idx ^ np.asarray(words, dtype=np.int64)), dtype=np.float64)


def transmit(samples, words, config: CodecConfig) -> np.ndarray:
    """Encoder core: samples and q1_bits keystream words to Q2 codewords."""
    v = encrypted_levels(samples, words, config)
    return np.asarray(config.coarse.quantize_index(v), dtype=np.int64)


def receive(codes, words, config: CodecConfig) -> np.ndarray:
    """Decoder core: Q2 codewords back to Q1 reconstruction values."""
    fine = config.fine
    w = config.coarse.reconstruct(np.asarray(codes, dtype=np.int64))
    snapped = np.asarray(fine.quantize_index(w), dtype=np.int64)
    return np.asarray(fine.reconstruct(snapped ^ np.asarray(words, dtype=np.int64)), dtype=np.float64)


def encode(signal: SignalBuffer, key: ChaoticKey, config: CodecConfig) -> EncodedStream:
    validate_key(key)
    samples = getattr(signal, "samples", signal)
    n = len(samples)
    keystream = generate_keystream(key, n, config.q1_bits)
    codes = transmit(samples, keystream.words, config) if n else np.zeros(0, dtype=np.int64)
    return EncodedStream.from_codewords(codes, config, getattr(signal, "sample_rate", 0))


def decode(stream: EncodedStream, key: ChaoticKey) -> SignalBuffer:
    validate_key(key)
    if not isinstance(stream, EncodedStream):
        raise MalformedStream(f"expected an EncodedStream, got {type(stream).__name__}")
    config = stream.config
    keystream = generate_keystream(key, stream.num_samples, config.q1_bits)
    out = receive(stream.codewords(), keystream.words, config)
    return SignalBuffer(out, stream.sample_rate)


def encrypted_reconstruction(word: int, config: CodecConfig):
    """Transmit-side map ``x -> Q1.reconstruct(Q1.quantize_index(x) ^ word)``."""
    fine = config.fine
    if not 0 <= word < fine.levels:
        raise WordWidthMismatch(f"word {word} does not fit in {config.q1_bits} bits")

    def apply(x):
        return fine.reconstruct(np.asarray(fine.quantize_index(x)) ^ word)

    return apply


def chaotic_characteristic(
    key: ChaoticKey,
    config: CodecConfig,
    position: int,
    xmin: float,
    xmax_plot: float,
    points: int,
) -> CharacteristicTable:
    """Input-output characteristic of the encrypting quantizer at one keystream position."""
    if position < 0:
        raise ParameterOutOfRange(f"position={position} must be non-negative", "position")
    word = int(generate_keystream(key, position + 1, config.q1_bits)[position])
    return characteristic(encrypted_reconstruction(word, config), xmin, xmax_plot, points)
