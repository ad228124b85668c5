# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled convolution kernels; mirrors ``_kernels_py`` exactly.

Coefficients stay arbitrary Python objects (exact rationals), so the
speedup comes from removing interpreter overhead in the pair loops, not
from native arithmetic.  Lower bounds are always finite ints; upper
bounds may be ``math.inf``.
"""

BACKEND = "cython"


def convolve_1d(dict a, dict b, lo, hi):
    cdef dict out = {}
    cdef bint bounded_hi = hi != float("inf")
    cdef long long clo = lo
    cdef long long chi = 0
    if bounded_hi:
        chi = hi
    cdef long long ea, eb, e
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            if e < clo:
                continue
            if bounded_hi and e >= chi:
                continue
            v = ca * cb
            prev = out.get(e)
            if prev is not None:
                v = prev + v
            if v:
                out[e] = v
            elif prev is not None:
                del out[e]
    return out


def convolve_2d(dict a, dict b, lo_q, lo_p, hi_q, hi_p):
    cdef dict out = {}
    cdef bint bq_hi = hi_q != float("inf")
    cdef bint bp_hi = hi_p != float("inf")
    cdef long long clo_q = lo_q
    cdef long long clo_p = lo_p
    cdef long long chi_q = 0, chi_p = 0
    if bq_hi:
        chi_q = hi_q
    if bp_hi:
        chi_p = hi_p
    cdef long long qa, pa, qb, pb, q, p
    for ka, ca in a.items():
        qa = ka[0]
        pa = ka[1]
        for kb, cb in b.items():
            qb = kb[0]
            pb = kb[1]
            q = qa + qb
            if q < clo_q or (bq_hi and q >= chi_q):
                continue
            p = pa + pb
            if p < clo_p or (bp_hi and p >= chi_p):
                continue
            key = (q, p)
            v = ca * cb
            prev = out.get(key)
            if prev is not None:
                v = prev + v
            if v:
                out[key] = v
            elif prev is not None:
                del out[key]
    return out


def convolve_packed(dict a, dict b):
    cdef dict out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = ca * cb
            prev = out.get(e)
            if prev is not None:
                v = prev + v
            if v:
                out[e] = v
            elif prev is not None:
                del out[e]
    return out
