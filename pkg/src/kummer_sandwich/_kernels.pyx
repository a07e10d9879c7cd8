# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels; same contracts as the pure-Python module."""

from cython.parallel import prange

import numpy as np

ctypedef long long i64


cdef inline i64 _mulmod(i64 a, i64 b, i64 p) nogil:
    return (a * b) % p


def charsum_matrix(matrix, i64 p, residues, int threads=1):
    cdef i64[:, ::1] m = np.ascontiguousarray(matrix, dtype=np.int64)
    cdef signed char[::1] chi = np.ascontiguousarray(residues, dtype=np.int8)
    cdef Py_ssize_t dx = m.shape[0] - 1
    cdef Py_ssize_t dw = m.shape[1] - 1
    cdef i64[:, ::1] rows = np.zeros((p, dx + 1), dtype=np.int64)
    cdef i64 total = 0
    cdef i64 w, x, acc
    cdef Py_ssize_t i, j
    for w in prange(p, nogil=True, num_threads=threads, schedule="static"):
        for i in range(dx + 1):
            acc = 0
            for j in range(dw, -1, -1):
                acc = (acc * w + m[i, j]) % p
            rows[w, i] = acc
        for x in range(p):
            acc = rows[w, dx]
            for i in range(dx - 1, -1, -1):
                acc = (acc * x + rows[w, i]) % p
            total += chi[acc]
    return (total % p + p) % p


cdef void _sign_sums(i64[::1] binom, i64 p, i64[::1] out) nogil:
    cdef Py_ssize_t m = binom.shape[0] - 1
    cdef Py_ssize_t ell, s, t, lo, hi
    cdef i64 n, acc, term
    for ell in range(m + 1):
        n = p - 1 - ell
        lo = n - m if n - m > 0 else 0
        hi = m if m < n else n
        acc = 0
        for s in range(lo, hi + 1):
            t = n - s
            term = _mulmod(binom[s], binom[t], p)
            if t & 1:
                acc = (acc - term + p) % p
            else:
                acc = (acc + term) % p
        out[ell] = acc


cdef i64 _assemble(i64[::1] binom, i64[::1] signs, i64[::1] triple, i64 p) nogil:
    cdef Py_ssize_t m = binom.shape[0] - 1
    cdef Py_ssize_t ell
    cdef i64 acc = 0, two = 1
    for ell in range(m + 1):
        acc = (acc + _mulmod(_mulmod(_mulmod(two, binom[ell], p), signs[ell], p), triple[ell], p)) % p
        two = two * 2 % p
    if m & 1:
        acc = (p - acc) % p
    return (1 + acc) % p


cdef void _weighted(i64[::1] binom, i64 base, i64 p, i64[::1] out) nogil:
    cdef Py_ssize_t k
    cdef i64 power = 1
    for k in range(binom.shape[0]):
        out[k] = _mulmod(binom[k], power, p)
        power = _mulmod(power, base, p)


def closed_form_naive(i64 a, i64 b, i64 c, i64 p, binom_list):
    cdef i64[::1] binom = np.asarray(binom_list, dtype=np.int64)
    cdef Py_ssize_t m = binom.shape[0] - 1
    cdef i64[::1] u = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] v = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] w = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] signs = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] triple = np.zeros(m + 1, dtype=np.int64)
    cdef Py_ssize_t ell, i, j, k, r, lo, hi
    cdef i64 n, acc
    with nogil:
        _weighted(binom, a % p, p, u)
        _weighted(binom, b % p, p, v)
        _weighted(binom, c % p, p, w)
        _sign_sums(binom, p, signs)
        for ell in range(m + 1):
            n = p - 1 - ell
            acc = 0
            lo = n - 2 * m if n - 2 * m > 0 else 0
            hi = m if m < n else n
            for i in range(lo, hi + 1):
                r = n - i
                for j in range((r - m if r - m > 0 else 0), (m if m < r else r) + 1):
                    k = r - j
                    acc = (acc + _mulmod(_mulmod(u[i], v[j], p), w[k], p)) % p
            triple[ell] = acc
        acc = _assemble(binom, signs, triple, p)
    return acc


cdef void _convolve(i64[::1] x, i64[::1] y, i64 p, i64[::1] out) nogil:
    cdef Py_ssize_t i, j
    for i in range(out.shape[0]):
        out[i] = 0
    for i in range(x.shape[0]):
        if x[i] == 0:
            continue
        for j in range(y.shape[0]):
            out[i + j] = (out[i + j] + _mulmod(x[i], y[j], p)) % p


def closed_form_conv(i64 a, i64 b, i64 c, i64 p, binom_list):
    cdef i64[::1] binom = np.asarray(binom_list, dtype=np.int64)
    cdef Py_ssize_t m = binom.shape[0] - 1
    cdef i64[::1] u = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] v = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] w = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] uv = np.empty(2 * m + 1, dtype=np.int64)
    cdef i64[::1] uvw = np.empty(3 * m + 1, dtype=np.int64)
    cdef i64[::1] signs = np.empty(m + 1, dtype=np.int64)
    cdef i64[::1] triple = np.zeros(m + 1, dtype=np.int64)
    cdef Py_ssize_t ell
    cdef i64 result
    with nogil:
        _weighted(binom, a % p, p, u)
        _weighted(binom, b % p, p, v)
        _weighted(binom, c % p, p, w)
        _convolve(u, v, p, uv)
        _convolve(uv, w, p, uvw)
        _sign_sums(binom, p, signs)
        for ell in range(m + 1):
            if p - 1 - ell <= 3 * m:
                triple[ell] = uvw[p - 1 - ell]
        result = _assemble(binom, signs, triple, p)
    return result
