"""Pure Python convolution kernels.

These are the hot inner loops of the whole package: sparse Cauchy
products of exact-coefficient series and polynomials.  The compiled
extension in ``_kernels.pyx`` implements the same three functions with
identical semantics; ``_accel`` picks whichever is available.

All functions take plain dicts and return a fresh dict with zero values
dropped.  Coefficients only need ``+`` and ``*`` (``Fraction`` and the
Gaussian rationals of the operator calculus both qualify).
"""

BACKEND = "python"


def convolve_1d(a, b, lo, hi):
    """Cauchy product of exponent->coefficient dicts.

    Only exponents e with lo <= e < hi are produced.  ``hi`` may be
    ``math.inf`` for exact (untruncated) operands.
    """
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            if e < lo or e >= hi:
                continue
            v = ca * cb
            if e in out:
                v = out[e] + v
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def convolve_2d(a, b, lo_q, lo_p, hi_q, hi_p):
    """Bivariate Cauchy product restricted to a box of exponent pairs."""
    out = {}
    for (qa, pa), ca in a.items():
        for (qb, pb), cb in b.items():
            q = qa + qb
            if q < lo_q or q >= hi_q:
                continue
            p = pa + pb
            if p < lo_p or p >= hi_p:
                continue
            key = (q, p)
            v = ca * cb
            if key in out:
                v = out[key] + v
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def convolve_packed(a, b):
    """Product of polynomials keyed by packed integer exponent vectors.

    Packed monomials add under integer addition, so this is a plain
    unbounded convolution.
    """
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = ca * cb
            if e in out:
                v = out[e] + v
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out
