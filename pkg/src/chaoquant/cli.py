"""Command-line interface.

Exit status: 0 on success, 1 on usage errors, 2 on runtime errors. Output
files are written through a temporary file and renamed into place, so a
failed command never leaves a partial file behind.
"""
from __future__ import annotations

import argparse
import contextlib
import os
import sys
import tempfile
from pathlib import Path

from . import codec, keystream, quantizers, sources, sweep
from .errors import ChaoquantError, MissingSampleRate

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@contextlib.contextmanager
def _atomic_output(path):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    os.close(fd)
    try:
        yield tmp
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _bits_range(text):
    try:
        lo, sep, hi = text.partition("..")
        lo = int(lo)
        hi = int(hi) if sep else lo
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _quantizer_list(text):
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    bad = [n for n in names if n not in sweep.QUANTIZERS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown quantizer(s) {','.join(bad) or text!r}")
    return names


def _xmax_policy(text):
    if text in ("four_sigma", "peak"):
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected four_sigma, peak or a positive number") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("support half-width must be positive")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _require_existing(args, *names):
    for name in names:
        path = getattr(args, name, None)
        if path is not None and not Path(path).is_file():
            raise UsageError(f"--{name.replace('_', '-')}: no such file: {path}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaoquant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("keygen", help="derive a chaotic key from a 64-bit seed")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("encode", help="encode a 16-bit PCM WAV file into a .cqz stream")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--q1-bits", type=int, default=12)
    p.add_argument("--q2-bits", type=int, required=True)
    p.add_argument("--xmax", type=_positive_float, help="support half-width (default: signal peak)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("decode", help="decode a .cqz stream to a WAV file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ref", help="original WAV; prints the SQNR of the decoded signal against it")

    p = sub.add_parser("characteristic", help="export a quantizer input-output characteristic as CSV")
    p.add_argument("--quantizer", choices=sweep.QUANTIZERS, default="uniform")
    p.add_argument("--bits", type=int, required=True, help="bits per sample (q1_bits for chaotic)")
    p.add_argument("--xmax", type=_positive_float, default=1.0)
    p.add_argument("--mu", type=_positive_float, default=255.0)
    p.add_argument("--xmin-plot", type=float)
    p.add_argument("--xmax-plot", type=float)
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--key", help="key file (chaotic only)")
    p.add_argument("--position", type=int, default=0, help="keystream position (chaotic only)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("sqnr", help="SQNR of a test WAV against a reference WAV")
    p.add_argument("--ref", required=True)
    p.add_argument("--test", required=True)

    p = sub.add_parser("sweep", help="SQNR versus bits-per-symbol sweep to CSV")
    p.add_argument("--source", choices=("laplacian", "wav"), default="laplacian")
    p.add_argument("--in", dest="input", help="WAV file (with --source wav)")
    p.add_argument("--label", help="source label in the CSV (default: laplacian / speech)")
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--sigma", type=_positive_float, default=1.0)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--bits", type=_bits_range, default=(2, 8))
    p.add_argument("--quantizers", type=_quantizer_list, default=sweep.QUANTIZERS)
    p.add_argument("--q1-bits", type=int, default=12)
    p.add_argument("--key")
    p.add_argument("--xmax-policy", type=_xmax_policy)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="also write the gain comparison report here")

    p = sub.add_parser("keyspace", help="key space size in bits")
    p.add_argument("--precision", type=float, default=1e-15)
    p.add_argument("--components", type=int, default=6)

    return parser


def cmd_keygen(args):
    key = keystream.key_from_seed(args.seed)
    with _atomic_output(args.out) as tmp:
        keystream.write_key(key, tmp)
    print(f"wrote key to {args.out}")


def cmd_encode(args):
    _require_existing(args, "input", "key")
    try:
        config = codec.CodecConfig(args.q1_bits, args.q2_bits, args.xmax or 1.0)
    except ChaoquantError as exc:
        raise UsageError(str(exc)) from None
    key = keystream.read_key(args.key)
    signal = sources.load_wav(args.input)
    if args.xmax is None:
        config = codec.CodecConfig(args.q1_bits, args.q2_bits, signal.peak() or 1.0)
    stream = codec.encode(signal, key, config)
    with _atomic_output(args.out) as tmp:
        stream.write(tmp)
    print(f"encoded {stream.num_samples} samples (q1={config.q1_bits}, q2={config.q2_bits} bits, "
          f"xmax={config.xmax:.6g}) to {args.out}")


def cmd_decode(args):
    _require_existing(args, "input", "key", "ref")
    key = keystream.read_key(args.key)
    stream = codec.EncodedStream.read(args.input)
    if stream.sample_rate == 0:
        raise MissingSampleRate("stream carries no sample rate; cannot write WAV")
    out = codec.decode(stream, key)
    ref = sources.load_wav(args.ref) if args.ref else None
    with _atomic_output(args.out) as tmp:
        sources.save_wav(out, tmp)
    msg = f"decoded {len(out)} samples to {args.out}"
    if ref is not None:
        msg += f"; SQNR {quantizers.sqnr_db(ref, out):.2f} dB"
    print(msg)


def cmd_characteristic(args):
    lo = -args.xmax if args.xmin_plot is None else args.xmin_plot
    hi = args.xmax if args.xmax_plot is None else args.xmax_plot
    if args.quantizer == "chaotic" and not args.key:
        raise UsageError("characteristic --quantizer chaotic requires --key")
    _require_existing(args, "key")
    try:
        if args.quantizer == "uniform":
            table = quantizers.characteristic(
                quantizers.UniformQuantizer(args.bits, args.xmax), lo, hi, args.points)
        elif args.quantizer == "nonuniform":
            table = quantizers.characteristic(
                quantizers.MuLawQuantizer(args.bits, args.xmax, args.mu), lo, hi, args.points)
        else:
            config = codec.CodecConfig(args.bits, args.bits, args.xmax)
            quantizers.characteristic(lambda x: x, lo, hi, args.points)  # validates the grid
            if args.position < 0:
                raise UsageError("--position must be non-negative")
    except ChaoquantError as exc:
        raise UsageError(str(exc)) from None
    if args.quantizer == "chaotic":
        key = keystream.read_key(args.key)
        table = codec.chaotic_characteristic(key, config, args.position, lo, hi, args.points)
    with _atomic_output(args.out) as tmp:
        table.write_csv(tmp)
    print(f"wrote {len(table)} points of the {args.quantizer} characteristic to {args.out}")


def cmd_sqnr(args):
    _require_existing(args, "ref", "test")
    ref = sources.load_wav(args.ref)
    test = sources.load_wav(args.test)
    print(f"SQNR {quantizers.sqnr_db(ref, test):.2f} dB")


def cmd_sweep(args):
    if args.source == "wav":
        if not args.input:
            raise UsageError("sweep --source wav requires --in")
        _require_existing(args, "input")
        src = sweep.WavSource(args.input, args.label or "speech")
    else:
        if args.n < 1:
            raise UsageError("--n must be positive")
        src = sweep.LaplacianSource(args.seed, args.n, args.sigma, args.label or "laplacian")
    if "chaotic" in args.quantizers and not args.key:
        raise UsageError("sweep with the chaotic quantizer requires --key")
    _require_existing(args, "key")
    key = keystream.read_key(args.key) if args.key else None
    try:
        config = sweep.SweepConfig(src, key, args.bits, args.quantizers, args.q1_bits, args.xmax_policy)
    except ChaoquantError as exc:
        raise UsageError(str(exc)) from None
    rows = sweep.run_sweep(config)
    report = sweep.comparison_report(rows)
    with _atomic_output(args.out) as tmp:
        sweep.export_csv(rows, tmp)
    if args.report:
        with _atomic_output(args.report) as tmp:
            Path(tmp).write_text(report)
    gains = sweep.mean_gains(rows, src.label)
    summary = f"wrote {len(rows)} rows to {args.out}"
    if ("uniform", "decoded") in gains:
        summary += f"; mean chaotic gain over uniform {gains['uniform', 'decoded']:+.2f} dB"
    print(summary)


def cmd_keyspace(args):
    try:
        bits = keystream.key_space_bits(args.precision, args.components)
    except ChaoquantError as exc:
        raise UsageError(str(exc)) from None
    print(f"{bits:.2f} bits (≈ 2^{round(bits)})")


COMMANDS = {
    "keygen": cmd_keygen,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "characteristic": cmd_characteristic,
    "sqnr": cmd_sqnr,
    "sweep": cmd_sweep,
    "keyspace": cmd_keyspace,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChaoquantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
