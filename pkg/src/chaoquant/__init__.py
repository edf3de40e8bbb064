"""Chaotic uniform quantizer for speech coding.

Two PCM stages separated by an XOR with a keystream drawn from a
three-dimensional chaotic map, plus uniform and mu-law baselines and an
SQNR benchmark harness.
"""
from ._backend import BACKEND
from .codec import (
    CodecConfig,
    EncodedStream,
    chaotic_characteristic,
    decode,
    encode,
    encrypt_indices,
)
from .errors import *  # noqa: F401,F403
from .keystream import (
    ChaoticKey,
    ChaoticState,
    Keystream,
    generate_keystream,
    is_degenerate,
    iterate_map,
    key_from_seed,
    key_space_bits,
    read_key,
    validate_key,
    write_key,
)
from .quantizers import (
    CharacteristicTable,
    MuLawQuantizer,
    UniformQuantizer,
    characteristic,
    sqnr_db,
)
from .sources import SignalBuffer, laplacian_source, load_wav, save_wav, uniform_source
from .sweep import LaplacianSource, SweepConfig, SweepRow, WavSource, export_csv, run_sweep

__version__ = "0.1.0"
