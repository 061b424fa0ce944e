# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled point-counting kernels.

One quadratic-residue table per prime, then a single Horner/Legendre pass.
Mirrors lcongr._kernels_py exactly; selected at import by lcongr.kernels.
"""

from libc.stdlib cimport calloc, free

BACKEND = "cython"


cdef long _ap_single(long long b2, long long b4, long long b6, long p) except? -9999:
    cdef char *qr = <char *> calloc(p, sizeof(char))
    if qr == NULL:
        raise MemoryError()
    cdef long x, s
    cdef long long f, v
    cdef long long bb2 = b2 % p, bb4 = (2 * b4) % p, bb6 = b6 % p
    if bb2 < 0: bb2 += p
    if bb4 < 0: bb4 += p
    if bb6 < 0: bb6 += p
    for x in range(p):
        v = (<long long> x * x) % p
        qr[v] = 1
    s = 0
    for x in range(p):
        f = (4 * x + bb2) % p
        f = (f * x + bb4) % p
        f = (f * x + bb6) % p
        if f == 0:
            continue
        if qr[f]:
            s += 1
        else:
            s -= 1
    free(qr)
    return -s


def ap_single(b2, b4, b6, p):
    return _ap_single(b2, b4, b6, p)


def ap_sweep(b2, b4, b6, primes):
    cdef long long bb2 = b2, bb4 = b4, bb6 = b6
    out = []
    for p in primes:
        out.append(_ap_single(bb2, bb4, bb6, p))
    return out


cdef long _quartic_roots(long long c4, long long c3, long long c2,
                         long long c1, long long c0, long p):
    cdef long x, n = 0
    cdef long long f
    cdef long long d4 = c4 % p, d3 = c3 % p, d2 = c2 % p, d1 = c1 % p, d0 = c0 % p
    if d4 < 0: d4 += p
    if d3 < 0: d3 += p
    if d2 < 0: d2 += p
    if d1 < 0: d1 += p
    if d0 < 0: d0 += p
    for x in range(p):
        f = (d4 * x + d3) % p
        f = (f * x + d2) % p
        f = (f * x + d1) % p
        f = (f * x + d0) % p
        if f == 0:
            n += 1
    return n


def quartic_root_count(c4, c3, c2, c1, c0, p):
    return _quartic_roots(c4, c3, c2, c1, c0, p)


def quartic_root_count_sweep(coeffs, primes):
    cdef long long d4 = coeffs[0], d3 = coeffs[1], d2 = coeffs[2]
    cdef long long d1 = coeffs[3], d0 = coeffs[4]
    out = []
    for p in primes:
        out.append(_quartic_roots(d4, d3, d2, d1, d0, p))
    return out
