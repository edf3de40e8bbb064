"""SQNR versus bits-per-symbol sweeps for the three quantizers."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .codec import CodecConfig, encrypted_levels, receive, transmit
from .errors import DistortionZero, EmptyResult, IoFailure, ParameterOutOfRange
from .keystream import ChaoticKey, generate_keystream, validate_key
from .quantizers import MuLawQuantizer, UniformQuantizer, sqnr_db
from .sources import SignalBuffer, laplacian_source, load_wav

QUANTIZERS = ("uniform", "nonuniform", "chaotic")
CSV_HEADER = ["source", "quantizer", "bits", "sqnr_db", "sqnr_encrypted_domain_db"]
MAX_SWEEP_BITS = 12

# average SQNR gains (dB) of the chaotic quantizer claimed in the literature,
# over (uniform, nonuniform), per source kind
CLAIMED_GAINS_DB = {
    "laplacian": (3.0, 1.0),
    "speech": (2.5, 0.8),
}


@dataclass(frozen=True)
class LaplacianSource:
    seed: int = 1
    count: int = 1_000_000
    sigma: float = 1.0
    label: str = "laplacian"

    def load(self) -> SignalBuffer:
        return laplacian_source(self.seed, self.count, self.sigma)

    def four_sigma(self, signal) -> float:
        return 4.0 * self.sigma


@dataclass(frozen=True)
class WavSource:
    path: str
    label: str = "speech"

    def load(self) -> SignalBuffer:
        return load_wav(self.path)

    def four_sigma(self, signal) -> float:
        return 4.0 * signal.std()


Source = Union[LaplacianSource, WavSource]


@dataclass(frozen=True)
class SweepConfig:
    source: Source
    key: ChaoticKey | None = None
    bits_range: tuple = (2, 8)
    quantizers: tuple = QUANTIZERS
    q1_bits: int = 12
    # "four_sigma", "peak", a positive number, or None for the source default
    xmax_policy: Union[str, float, None] = None
    mu: float = 255.0

    def __post_init__(self):
        lo, hi = self.bits_range
        if not (1 <= lo <= hi <= MAX_SWEEP_BITS):
            raise ParameterOutOfRange(
                f"bits range {lo}..{hi} must lie within 1..{MAX_SWEEP_BITS}", "bits_range"
            )
        unknown = set(self.quantizers) - set(QUANTIZERS)
        if unknown or not self.quantizers:
            raise ParameterOutOfRange(f"unknown quantizers {sorted(unknown)}", "quantizers")
        if "chaotic" in self.quantizers and hi > self.q1_bits:
            raise ParameterOutOfRange(
                f"chaotic sweep needs bits <= q1_bits={self.q1_bits}, range ends at {hi}", "q1_bits"
            )
        if "chaotic" in self.quantizers:
            if self.key is None:
                raise ParameterOutOfRange("chaotic sweep needs a key", "key")
            CodecConfig(self.q1_bits, lo)
            validate_key(self.key)

    @property
    def bits(self):
        return range(self.bits_range[0], self.bits_range[1] + 1)

    def resolve_xmax(self, signal: SignalBuffer) -> float:
        policy = self.xmax_policy
        if policy is None:
            policy = "peak" if isinstance(self.source, WavSource) else "four_sigma"
        if policy == "four_sigma":
            xmax = self.source.four_sigma(signal)
        elif policy == "peak":
            xmax = signal.peak()
        else:
            xmax = float(policy)
        if not (math.isfinite(xmax) and xmax > 0):
            raise ParameterOutOfRange(f"support half-width {xmax!r} is not positive", "xmax_policy")
        return xmax


@dataclass(frozen=True)
class SweepRow:
    source: str
    quantizer: str
    bits: int
    sqnr_db: float
    sqnr_encrypted_domain_db: float | None = field(default=None)


def _order(row):
    return (QUANTIZERS.index(row.quantizer), row.bits)


def run_sweep(config: SweepConfig, signal: SignalBuffer | None = None) -> list[SweepRow]:
    """Measure SQNR at every swept bit depth for each requested quantizer.

    ``signal`` overrides loading from ``config.source``; every row uses the
    same buffer.
    """
    if signal is None:
        signal = config.source.load()
    x = signal.samples
    xmax = config.resolve_xmax(signal)
    label = config.source.label
    rows = []

    for name in QUANTIZERS:
        if name not in config.quantizers:
            continue
        if name == "chaotic":
            words = generate_keystream(config.key, len(x), config.q1_bits).words
            for b in config.bits:
                cc = CodecConfig(config.q1_bits, b, xmax)
                v = encrypted_levels(x, words, cc)
                codes = transmit(x, words, cc)
                decoded = receive(codes, words, cc)
                try:
                    enc_db = sqnr_db(v, cc.coarse.reconstruct(codes))
                except DistortionZero:
                    enc_db = math.inf  # coarse grid coincides with the fine one
                rows.append(SweepRow(label, name, b, sqnr_db(x, decoded), enc_db))
            continue
        for b in config.bits:
            q = UniformQuantizer(b, xmax) if name == "uniform" else MuLawQuantizer(b, xmax, config.mu)
            rows.append(SweepRow(label, name, b, sqnr_db(x, q(x))))

    rows.sort(key=_order)
    return rows


def _fmt(v):
    return "" if v is None else repr(float(v))


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    if not rows:
        raise EmptyResult("no sweep rows to export")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in sorted(rows, key=_order):
        writer.writerow([r.source, r.quantizer, r.bits, _fmt(r.sqnr_db), _fmt(r.sqnr_encrypted_domain_db)])
    return buf.getvalue()


def export_csv(rows: Sequence[SweepRow], path) -> None:
    text = rows_to_csv(rows)
    try:
        Path(path).write_bytes(text.encode("ascii"))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def parse_csv(text: str) -> list[SweepRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames!r}")
    rows = []
    for rec in reader:
        enc = rec["sqnr_encrypted_domain_db"]
        rows.append(
            SweepRow(rec["source"], rec["quantizer"], int(rec["bits"]), float(rec["sqnr_db"]),
                     float(enc) if enc else None)
        )
    return rows


def read_csv(path) -> list[SweepRow]:
    try:
        return parse_csv(Path(path).read_text())
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def mean_gains(rows: Sequence[SweepRow], source: str) -> dict:
    """Average SQNR difference of the chaotic rows over each baseline.

    Differences are averaged over the bit depths present for both
    quantizers. Keys are ``(baseline, domain)`` with domain ``"decoded"`` or
    ``"encrypted"``.
    """
    by = {(r.quantizer, r.bits): r for r in rows if r.source == source}
    gains = {}
    for baseline in ("uniform", "nonuniform"):
        common = sorted(b for (q, b) in by if q == baseline and ("chaotic", b) in by)
        if not common:
            continue
        dec = [by["chaotic", b].sqnr_db - by[baseline, b].sqnr_db for b in common]
        enc = [by["chaotic", b].sqnr_encrypted_domain_db - by[baseline, b].sqnr_db for b in common]
        gains[baseline, "decoded"] = float(np.mean(dec))
        gains[baseline, "encrypted"] = float(np.mean(enc))
    return gains


def comparison_report(rows: Sequence[SweepRow], kind: str | None = None) -> str:
    """Plain-text table of measured chaotic-quantizer gains against the claimed ones.

    ``kind`` selects the claimed figures (``"laplacian"`` or ``"speech"``); by
    default it is taken from the source label.
    """
    if not rows:
        raise EmptyResult("no sweep rows to report")
    lines = []
    for source in sorted({r.source for r in rows}):
        sub = [r for r in rows if r.source == source]
        bits = sorted({r.bits for r in sub})
        claim = CLAIMED_GAINS_DB.get(kind or source)
        lines.append(f"source: {source}  bits: {bits[0]}..{bits[-1]}")
        lines.append(f"{'quantizer':<11}" + "".join(f"{b:>9d}" for b in bits))
        by = {(r.quantizer, r.bits): r for r in sub}
        for q in QUANTIZERS:
            if any((q, b) in by for b in bits):
                lines.append(f"{q:<11}" + "".join(
                    f"{by[q, b].sqnr_db:9.2f}" if (q, b) in by else f"{'-':>9}" for b in bits))
        if any(("chaotic", b) in by for b in bits):
            lines.append(f"{'chaotic/enc':<11}" + "".join(
                f"{by['chaotic', b].sqnr_encrypted_domain_db:9.2f}" if ("chaotic", b) in by else f"{'-':>9}"
                for b in bits))
        gains = mean_gains(sub, source)
        for i, baseline in enumerate(("uniform", "nonuniform")):
            if (baseline, "decoded") not in gains:
                continue
            claimed = f"{claim[i]:+.2f}" if claim else "n/a"
            lines.append(
                f"mean gain over {baseline:<10}: decoded {gains[baseline, 'decoded']:+7.2f} dB, "
                f"encrypted-domain {gains[baseline, 'encrypted']:+7.2f} dB, claimed {claimed} dB"
            )
        lines.append("")
    return "\n".join(lines)
