# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: half-turn actions, leapfrog words and Moebius chains."""

cdef int RENORM_EVERY = 16


cdef inline double complex _conj(double complex z) nogil:
    return z.real - 1j * z.imag


cdef inline double complex _half_turn_apply(double complex p, double complex z) nogil:
    cdef double s = 1.0 + p.real * p.real + p.imag * p.imag
    return (s * z - 2.0 * p) / (2.0 * _conj(p) * z - s)


def half_turn_apply(double complex p, double complex z):
    return _half_turn_apply(p, z)


def apply_word(double complex[::1] pts, long[::1] idx, long[::1] sgn):
    """Apply leapfrog letters left to right, in place on ``pts``."""
    cdef Py_ssize_t k, n = idx.shape[0]
    cdef int i, j
    cdef double complex xi, xj
    with nogil:
        for k in range(n):
            i = <int>idx[k] - 1
            j = (i + 1) % 6
            xi = pts[i]
            xj = pts[j]
            if sgn[k] > 0:
                pts[i] = xj
                pts[j] = _half_turn_apply(xj, xi)
            else:
                pts[i] = _half_turn_apply(xi, xj)
                pts[j] = xi


def half_turn_product(double complex[::1] pts):
    """Matrix (a, b) of s_{p[n-1]} ... s_{p[0]} in the continuous lift."""
    cdef Py_ssize_t k, n = pts.shape[0]
    cdef double complex a = 1.0, b = 0.0, ha, hb, na, nb, p
    cdef double r2, w, det
    for k in range(n):
        p = pts[k]
        r2 = p.real * p.real + p.imag * p.imag
        w = 1.0 / (1.0 - r2)
        ha = 1j * (1.0 + r2) * w
        hb = -2j * p * w
        na = ha * a + hb * _conj(b)
        nb = ha * b + hb * _conj(a)
        a = na
        b = nb
        if (k + 1) % RENORM_EVERY == 0:
            det = (a.real * a.real + a.imag * a.imag) - (b.real * b.real + b.imag * b.imag)
            det = det ** 0.5
            a = a / det
            b = b / det
    return complex(a), complex(b)


def mobius_chain(double complex[::1] a_seq, double complex[::1] b_seq):
    """Product M[n-1] ... M[0] of PU(1,1) matrices given by their first rows."""
    cdef Py_ssize_t k, n = a_seq.shape[0]
    cdef double complex a = 1.0, b = 0.0, na, nb
    cdef double det
    for k in range(n):
        na = a_seq[k] * a + b_seq[k] * _conj(b)
        nb = a_seq[k] * b + b_seq[k] * _conj(a)
        a = na
        b = nb
        if (k + 1) % RENORM_EVERY == 0:
            det = (a.real * a.real + a.imag * a.imag) - (b.real * b.real + b.imag * b.imag)
            det = det ** 0.5
            a = a / det
            b = b / det
    return complex(a), complex(b)
