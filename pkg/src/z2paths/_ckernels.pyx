# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled root-counting kernel.

Polynomials are multilinear over path variables x1..xh and encoded as
bitmasks: bit k-1 of a monomial mask is set when x_k occurs. A system of
polynomials is a flat mask array plus an offsets array (CSR layout), so
polynomial p owns ``masks[offsets[p]:offsets[p+1]]``.
"""
from libc.stdint cimport uint64_t, int64_t


cdef inline int _parity(const uint64_t[::1] masks, int64_t start, int64_t stop, uint64_t s) noexcept nogil:
    cdef int par = 0
    cdef int64_t k
    for k in range(start, stop):
        if (masks[k] & ~s) == 0:
            par ^= 1
    return par


def count_split(const uint64_t[::1] masks, const int64_t[::1] offsets,
                const uint64_t[::1] phase, uint64_t lo, uint64_t hi):
    """Count assignments s in [lo, hi) where every polynomial vanishes.

    Returns ``(n0, n1)`` split by the value of the phase polynomial.
    """
    cdef Py_ssize_t npolys = offsets.shape[0] - 1
    cdef Py_ssize_t nphase = phase.shape[0]
    cdef uint64_t s
    cdef Py_ssize_t p
    cdef int ok
    cdef long long n0 = 0, n1 = 0
    with nogil:
        s = lo
        while s < hi:
            ok = 1
            for p in range(npolys):
                if _parity(masks, offsets[p], offsets[p + 1], s):
                    ok = 0
                    break
            if ok:
                if _parity(phase, 0, nphase, s):
                    n1 += 1
                else:
                    n0 += 1
            s += 1
    return n0, n1
