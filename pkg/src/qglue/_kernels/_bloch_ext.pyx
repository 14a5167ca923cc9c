# cython: language_level=3
"""Compiled entropy-bias kernels for the qubit generalized erasure models.

Axis kernels take a point on a symmetry axis through its distances to the two
poles, e_lo = 1 + t and e_hi = 1 - t, so points within 1e-300 of a pure state
keep full relative precision. All results are in bits.
"""
from libc.math cimport log, log1p, sqrt, fabs, NAN

cdef double LN2 = 0.6931471805599453


cdef inline double h2(double q) nogil:
    if q <= 0.0 or q >= 1.0:
        return 0.0
    return (-q * log(q) - (1.0 - q) * log1p(-q)) / LN2


cdef inline double hdiff(double a, double b, double d) nogil:
    # h(a) - h(b) with a = b + d, accurate when |d| is small relative to b.
    cdef double m = b if b < 1.0 - b else 1.0 - b
    if b <= 0.0 or b >= 1.0 or fabs(d) > 0.5 * m:
        return h2(a) - h2(b)
    return (d * log((1.0 - b) / b) - a * log1p(d / b) - (1.0 - a) * log1p(-d / (1.0 - b))) / LN2


cdef inline double small_eig(double w) nogil:
    # smaller eigenvalue of a qubit state with 1 - |r|^2 = w
    if w <= 0.0:
        return 0.0
    return w / (2.0 * (1.0 + sqrt(1.0 - w if w < 1.0 else 0.0)))


def amplitude_z(double p, double lam, const double[::1] e_lo, const double[::1] e_hi,
                double[::1] out):
    cdef Py_ssize_t i, n = out.shape[0]
    cdef double lo, hi, s_in, d
    with nogil:
        for i in range(n):
            lo = e_lo[i]
            hi = e_hi[i]
            s_in = 0.5 * (lo if lo < hi else hi)
            if lo <= hi:
                d = hdiff(p + 0.5 * (1.0 - p) * lo, 0.5 * p * hi, 0.5 * lo)
            else:
                d = h2(0.5 * (1.0 - p) * hi) - h2(0.5 * p * hi)
            out[i] = (1.0 - lam) * d - lam * h2(s_in)


def dephasing_z(double p, double lam, const double[::1] e_lo, const double[::1] e_hi,
                double[::1] out):
    cdef Py_ssize_t i, n = out.shape[0]
    cdef double lo, hi, s_in, s_c
    with nogil:
        for i in range(n):
            lo = e_lo[i]
            hi = e_hi[i]
            s_in = 0.5 * (lo if lo < hi else hi)
            s_c = small_eig(4.0 * p * (1.0 - p) * lo * hi)
            out[i] = (1.0 - 2.0 * lam) * h2(s_in) - (1.0 - lam) * h2(s_c)


def dephasing_x(double p, double lam, const double[::1] e_lo, const double[::1] e_hi,
                double[::1] out):
    cdef Py_ssize_t i, n = out.shape[0]
    cdef double e, d
    with nogil:
        for i in range(n):
            e = e_lo[i] if e_lo[i] < e_hi[i] else e_hi[i]
            d = 0.5 * (1.0 - 2.0 * p) * e
            out[i] = (1.0 - lam) * hdiff(p + d, p, d) - lam * h2(0.5 * e)


def plane(int model, double p, double lam, const double[::1] x, const double[::1] z,
          double[::1] out):
    """model 0: amplitude, 1: dephasing; points (x, 0, z) outside the ball give NaN."""
    cdef Py_ssize_t i, n = out.shape[0]
    cdef double w, wb, wc, u
    with nogil:
        for i in range(n):
            w = 1.0 - x[i] * x[i] - z[i] * z[i]
            if w < -1e-15:
                out[i] = NAN
                continue
            if w < 0.0:
                w = 0.0
            if model == 0:
                u = 1.0 - z[i]
                wb = (1.0 - p) * (w + p * u * u)
                wc = p * (w + (1.0 - p) * u * u)
            else:
                wb = w + 4.0 * p * (1.0 - p) * x[i] * x[i]
                wc = 4.0 * p * (1.0 - p) * (1.0 - z[i] * z[i])
            out[i] = (1.0 - lam) * (h2(small_eig(wb)) - h2(small_eig(wc))) - lam * h2(small_eig(w))
