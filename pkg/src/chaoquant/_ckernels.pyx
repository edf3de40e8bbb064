# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled chaotic-map kernels; bit-exact transcription of _pykernels."""
import numpy as np

from libc.math cimport floor, fabs
from libc.stdint cimport uint32_t, uint64_t

cdef double GUARD = 1e-12
cdef double ESCAPE_THRESHOLD = 1e-10
cdef double ESCAPE_VALUE = 0.123456789
cdef int SKIP_BITS = 16

BACKEND = "cython"


cdef inline double _guard(double d) noexcept nogil:
    if fabs(d) < GUARD:
        return -GUARD if d < 0.0 else GUARD
    return d


cdef inline double _escape(double v) noexcept nogil:
    return ESCAPE_VALUE if v < ESCAPE_THRESHOLD else v


cdef inline void _step(double* s, double alpha, double beta, double gamma) noexcept nogil:
    cdef double x = s[0], y = s[1], z = s[2]
    cdef double dx = x - x * x
    cdef double dy = y - y * y
    cdef double dz = z - z * z
    cdef double r, nx, ny, nz
    r = alpha * dx / _guard(dy)
    nx = r - floor(r)
    r = beta * dy / _guard(dz)
    ny = r - floor(r)
    r = gamma * dz / _guard(dx)
    nz = r - floor(r)
    s[0] = _escape(nx)
    s[1] = _escape(ny)
    s[2] = _escape(nz)


def step(double x, double y, double z, double alpha, double beta, double gamma):
    cdef double s[3]
    s[0] = x
    s[1] = y
    s[2] = z
    _step(s, alpha, beta, gamma)
    return s[0], s[1], s[2]


def orbit(double alpha, double beta, double gamma, double x, double y, double z,
          Py_ssize_t count):
    out = np.empty((count, 3), dtype=np.float64)
    cdef double[:, ::1] view = out
    cdef double s[3]
    cdef Py_ssize_t i
    s[0] = x
    s[1] = y
    s[2] = z
    with nogil:
        for i in range(count):
            _step(s, alpha, beta, gamma)
            view[i, 0] = s[0]
            view[i, 1] = s[1]
            view[i, 2] = s[2]
    return out


def keystream_words(double alpha, double beta, double gamma,
                    double x, double y, double z,
                    Py_ssize_t count, int word_bits, Py_ssize_t burn_in):
    out = np.empty(count, dtype=np.uint32)
    cdef uint32_t[::1] view = out
    cdef double scale = <double>(1ULL << (SKIP_BITS + word_bits))
    cdef uint64_t mask = (1ULL << word_bits) - 1
    cdef double s[3]
    cdef Py_ssize_t i
    s[0] = x
    s[1] = y
    s[2] = z
    with nogil:
        for i in range(burn_in):
            _step(s, alpha, beta, gamma)
        for i in range(count):
            _step(s, alpha, beta, gamma)
            view[i] = <uint32_t>((<uint64_t>(s[0] * scale)) & mask)
    return out
