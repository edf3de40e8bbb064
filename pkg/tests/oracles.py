"""Reference computations that share no code with the library under test."""
import math

import numpy as np
from scipy import integrate, stats


def chi_square(values, bins):
    counts = np.bincount(np.asarray(values, dtype=np.int64), minlength=bins)
    expected = counts.sum() / bins
    return float(((counts - expected) ** 2 / expected).sum())


def chi_square_critical(dof, quantile=0.999):
    return float(stats.chi2.ppf(quantile, dof))


def laplace_pdf(x, sigma):
    b = sigma / math.sqrt(2.0)
    return math.exp(-abs(x) / b) / (2.0 * b)


def laplacian_uniform_sqnr_db(bits, xmax, sigma=1.0):
    """SQNR of a midrise uniform quantizer for a Laplacian source.

    Distortion is the sum over cells of the integral of (x - m)^2 p(x); the
    two edge cells extend to infinity, which accounts for overload.
    """
    q = 2 ** bits
    step = 2.0 * xmax / q
    edges = [-math.inf] + [-xmax + k * step for k in range(1, q)] + [math.inf]
    distortion = 0.0
    for i in range(q):
        m = -xmax + (i + 0.5) * step
        val, _ = integrate.quad(lambda x: (x - m) ** 2 * laplace_pdf(x, sigma), edges[i], edges[i + 1],
                                epsabs=1e-14, epsrel=1e-12, limit=200)
        distortion += val
    return 10.0 * math.log10(sigma ** 2 / distortion)
