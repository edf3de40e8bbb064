"""Regenerate tests/data/speech.wav, a short synthetic spoken-word fixture.

Source-filter synthesis: a glottal pulse train with a falling pitch contour
drives cascaded formant resonators for a vowel sequence, with a noise burst
for the fricative. Output is 8 kHz, 16-bit mono, about 1.2 s.
"""
import sys
from pathlib import Path

import numpy as np
from scipy import signal as sps

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from chaoquant.sources import SignalBuffer, save_wav  # noqa: E402

RATE = 8000
# (duration s, formants Hz or None for unvoiced noise, amplitude)
SEGMENTS = [
    (0.08, None, 0.0),
    (0.10, "s", 0.15),
    (0.22, (730, 1090, 2440), 1.0),    # "a"
    (0.18, (270, 2290, 3010), 0.8),    # "i"
    (0.06, None, 0.0),
    (0.20, (570, 840, 2410), 0.9),     # "o"
    (0.22, (300, 870, 2240), 0.7),     # "u"
    (0.14, None, 0.0),
]


def resonator(x, freq, bw):
    r = np.exp(-np.pi * bw / RATE)
    theta = 2 * np.pi * freq / RATE
    a = [1.0, -2 * r * np.cos(theta), r * r]
    return sps.lfilter([1.0 - r], a, x)


def synthesize(seed=20240611):
    rng = np.random.default_rng(seed)
    out = []
    t0 = 0.0
    total = sum(d for d, _, _ in SEGMENTS)
    for dur, formants, amp in SEGMENTS:
        n = int(dur * RATE)
        if formants is None:
            seg = np.zeros(n)
        elif formants == "s":
            seg = sps.lfilter([1, -0.95], [1], rng.standard_normal(n)) * 0.3
        else:
            t = t0 + np.arange(n) / RATE
            f0 = 140.0 - 40.0 * t / total
            phase = np.cumsum(f0 / RATE)
            pulses = (np.diff(np.floor(phase), prepend=0) > 0).astype(float)
            seg = sps.lfilter([1.0], [1.0, -0.97], pulses)  # glottal roll-off
            for f, bw in zip(formants, (80, 100, 140)):
                seg = resonator(seg, f, bw)
            seg += 0.01 * rng.standard_normal(n)
        env = np.hanning(n) ** 0.5 if amp else np.zeros(n)
        out.append(amp * env * seg / (np.max(np.abs(seg)) or 1.0))
        t0 += dur
    x = np.concatenate(out)
    return 0.6 * x / np.max(np.abs(x))


if __name__ == "__main__":
    dest = Path(__file__).resolve().parents[1] / "tests" / "data" / "speech.wav"
    save_wav(SignalBuffer(synthesize(), RATE), dest)
    print(f"wrote {dest}")
