"""Acceptance criteria. Run ``pytest tests/test_acceptance.py -v`` for the summary."""
import math
import time

import numpy as np
import pytest

from chaoquant import (
    CodecConfig,
    EncodedStream,
    LaplacianSource,
    SignalBuffer,
    SweepConfig,
    UniformQuantizer,
    WavSource,
    characteristic,
    chaotic_characteristic,
    decode,
    encode,
    export_csv,
    generate_keystream,
    key_space_bits,
    laplacian_source,
    load_wav,
    run_sweep,
    save_wav,
    sqnr_db,
    uniform_source,
)
from chaoquant.sweep import comparison_report

import conftest
from conftest import REFERENCE_KEY, random_valid_keys
from oracles import chi_square, chi_square_critical, laplacian_uniform_sqnr_db


def detail(request, text):
    request.node.user_properties.append(("detail", text))


@pytest.fixture(scope="module")
def laplacian_sweep():
    return run_sweep(SweepConfig(LaplacianSource(1, 1_000_000, 1.0), REFERENCE_KEY, (2, 8)))


@pytest.mark.criterion(1, "uniform quantizer: U[-1,1] SQNR = 6.02 b +/- 0.1 dB, b=4..10, < 30 s")
def test_c01_uniform_calibration(request):
    start = time.perf_counter()
    x = uniform_source(2024, 1_000_000, 1.0).samples
    errs = {}
    for b in range(4, 11):
        errs[b] = sqnr_db(x, UniformQuantizer(b, 1.0)(x)) - 6.02 * b
    elapsed = time.perf_counter() - start
    worst = max(abs(e) for e in errs.values())
    detail(request, f"max |error| {worst:.3f} dB, {elapsed:.2f} s")
    assert worst <= 0.1
    assert elapsed < 30.0


@pytest.mark.criterion(2, "Laplacian sigma=1 xmax=4: Monte Carlo vs distortion integral within 0.5 dB, b=2..8")
def test_c02_distortion_integral(request, laplacian_sweep):
    diffs = {}
    for r in laplacian_sweep:
        if r.quantizer == "uniform":
            diffs[r.bits] = r.sqnr_db - laplacian_uniform_sqnr_db(r.bits, 4.0, 1.0)
    assert sorted(diffs) == list(range(2, 9))
    worst = max(abs(d) for d in diffs.values())
    detail(request, f"max |MC - integral| {worst:.3f} dB")
    assert worst <= 0.5


@pytest.mark.criterion(3, "losslessness: decode(encode(x)) == Q1 quantize-reconstruct, 200 pairs, q1=q2 in {4,8,12}")
def test_c03_losslessness(request):
    rng = np.random.default_rng(303)
    keys = random_valid_keys(200, seed=3)
    failures = 0
    for i, key in enumerate(keys):
        bits = (4, 8, 12)[i % 3]
        n = int(rng.integers(1, 2000))
        xmax = float(rng.uniform(0.1, 5.0))
        # spans granular and overload regions
        x = rng.laplace(0.0, xmax * rng.uniform(0.05, 1.0), n)
        config = CodecConfig(bits, bits, xmax)
        out = decode(encode(SignalBuffer(x), key, config), key).samples
        if not np.array_equal(out, UniformQuantizer(bits, xmax)(x)):
            failures += 1
    detail(request, f"{failures} mismatching pairs of 200")
    assert failures == 0


@pytest.mark.criterion(4, "keystream chi-square, 256 bins, N=1e6, < 0.999 critical, 20 random keys, <= 1 failure")
def test_c04_keystream_uniformity(request):
    crit = chi_square_critical(255)
    stats = [chi_square(generate_keystream(k, 1_000_000, 8).words, 256) for k in random_valid_keys(20, seed=4)]
    failures = sum(s >= crit for s in stats)
    detail(request, f"{failures}/20 above {crit:.1f}; median {np.median(stats):.1f}")
    assert failures <= 1


@pytest.mark.criterion(5, "key sensitivity: x0 + 1e-12 gives |corr| < 0.05, 1e5 samples, q1=q2=8, 10 keys")
def test_c05_key_sensitivity(request):
    x = laplacian_source(55, 100_000, 1.0)
    config = CodecConfig(8, 8, 4.0)
    corrs = []
    for key in random_valid_keys(10, seed=5):
        stream = encode(x, key, config)
        x0 = key.x0 + 1e-12 if key.x0 + 1e-12 <= 1.0 else key.x0 - 1e-12
        wrong = decode(stream, key.replace(x0=x0))
        corrs.append(abs(np.corrcoef(x.samples, wrong.samples)[0, 1]))
    detail(request, f"max |corr| {max(corrs):.4f}")
    assert max(corrs) < 0.05


@pytest.mark.criterion(6, "key space: key_space_bits(1e-15, 6) in [298, 300]")
def test_c06_key_space(request):
    bits = key_space_bits(1e-15, 6)
    detail(request, f"{bits:.2f} bits")
    assert 298.0 <= bits <= 300.0


@pytest.mark.criterion(7, "characteristics: uniform staircase with 2^b levels; chaotic same steps, permuted full Q1 level set")
@pytest.mark.parametrize("bits", [2, 3, 4, 6])
def test_c07_characteristic_shapes(request, bits):
    points = (1 << bits) * 64 + 1
    q = UniformQuantizer(bits, 1.0)
    uni = characteristic(q, -1.0, 1.0, points)
    assert np.all(np.diff(uni.outputs) >= 0)
    assert len(np.unique(uni.outputs)) == 2**bits

    config = CodecConfig(bits, bits, 1.0)
    permuted = 0
    for position in range(4):
        cha = chaotic_characteristic(REFERENCE_KEY, config, position, -1.0, 1.0, points)
        assert np.array_equal(cha.step_abscissae(), uni.step_abscissae())
        runs = cha.outputs[np.r_[0, np.flatnonzero(np.diff(cha.outputs)) + 1]]
        assert sorted(runs.tolist()) == q.reconstruction_levels().tolist()
        permuted += bool(np.any(np.diff(cha.outputs) < 0))
    # a zero keystream word leaves the staircase monotone; not all four can be zero
    assert permuted >= 1
    detail(request, f"b={bits}: {permuted}/4 positions non-monotone")


@pytest.mark.criterion(8, "encrypted-domain SQNR = 6.02 b +/- 0.3 dB, b=2..8")
def test_c08_encrypted_domain(request, laplacian_sweep):
    errs = {r.bits: r.sqnr_encrypted_domain_db - 6.02 * r.bits
            for r in laplacian_sweep if r.quantizer == "chaotic"}
    assert sorted(errs) == list(range(2, 9))
    worst = max(abs(e) for e in errs.values())
    detail(request, f"max |error| {worst:.3f} dB")
    assert worst <= 0.3


@pytest.mark.criterion(9, "reproduction attempt: full CSVs for both sources, deterministic report (gains not asserted)")
def test_c09_reproduction_report(request, tmp_path, laplacian_sweep, speech_path):
    speech_cfg = SweepConfig(WavSource(str(speech_path)), REFERENCE_KEY, (2, 8))
    texts = []
    for attempt in range(2):
        lap = laplacian_sweep if attempt == 0 else run_sweep(
            SweepConfig(LaplacianSource(1, 1_000_000, 1.0), REFERENCE_KEY, (2, 8)))
        speech = run_sweep(speech_cfg)
        for name, rows in (("laplacian", lap), ("speech", speech)):
            assert len(rows) == 21
            export_csv(rows, tmp_path / f"{name}_{attempt}.csv")
        texts.append(comparison_report(lap) + comparison_report(speech))
    for name in ("laplacian", "speech"):
        assert (tmp_path / f"{name}_0.csv").read_bytes() == (tmp_path / f"{name}_1.csv").read_bytes()
    assert texts[0] == texts[1]

    # rows obey the calibrated criteria
    for r in speech:
        if r.quantizer == "chaotic":
            assert abs(r.sqnr_encrypted_domain_db - 6.02 * r.bits) <= 0.3
    conftest._ACCEPTANCE_TEXT["report"] = texts[0]
    detail(request, "report generated, byte-identical across runs")


@pytest.mark.criterion(10, "round trips: 100 random .cqz streams byte-exact; WAV error <= 2^-15")
def test_c10_round_trips(request, tmp_path):
    rng = np.random.default_rng(10)
    for _ in range(100):
        q1 = int(rng.integers(1, 17))
        q2 = int(rng.integers(1, q1 + 1))
        n = int(rng.integers(0, 5000))
        codes = rng.integers(0, 2**q2, n)
        config = CodecConfig(q1, q2, float(rng.uniform(1e-3, 1e3)))
        stream = EncodedStream.from_codewords(codes, config, int(rng.integers(0, 2**32)))
        data = stream.to_bytes()
        back = EncodedStream.from_bytes(data)
        assert back.to_bytes() == data
        assert np.array_equal(back.codewords(), codes)

    x = SignalBuffer(rng.uniform(-1.0, 1.0 - 2**-15, 100_000), 8000)
    save_wav(x, tmp_path / "rt.wav")
    err = float(np.max(np.abs(load_wav(tmp_path / "rt.wav").samples - x.samples)))
    detail(request, f"WAV max error {err:.2e} (bound {2**-15:.2e})")
    assert err <= 2**-15
