# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled root-finding kernel: simultaneous iteration with in-place updates."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, log, pi, pow, sin, sqrt

cnp.import_array()


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def aberth_roots(double[:, ::1] coeffs, int max_iter, double tol):
    cdef Py_ssize_t S = coeffs.shape[0]
    cdef Py_ssize_t n = coeffs.shape[1] - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] roots_arr = np.empty((S, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] resid_arr = np.empty(S, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] conv_arr = np.empty(S, dtype=np.uint8)
    cdef double complex[:, ::1] roots = roots_arr
    cdef double[::1] resid = resid_arr
    cdef cnp.uint8_t[::1] conv = conv_arr

    cdef double complex[::1] x = np.empty(n, dtype=np.complex128)
    cdef double[::1] c = np.empty(n + 1, dtype=np.float64)

    cdef Py_ssize_t s, i, j, it
    cdef double scale, r0, ang, maxdelta, norm, grow, rmax, absx, pr
    cdef double complex p, dp, w, ssum, denom, delta, xi
    cdef bint done

    for s in range(S):
        scale = 0.0
        for i in range(n + 1):
            if fabs(coeffs[s, i]) > scale:
                scale = fabs(coeffs[s, i])
        for i in range(n + 1):
            c[i] = coeffs[s, i] / scale

        r0 = pow(fabs(c[0]) / fabs(c[n]), 1.0 / n)
        if r0 < 1e-6:
            r0 = 1e-6
        elif r0 > 1e6:
            r0 = 1e6
        for i in range(n):
            ang = 2.0 * pi * (i + 0.5) / n + 0.7
            x[i] = r0 * (cos(ang) + 1j * sin(ang))

        done = False
        for it in range(max_iter):
            maxdelta = 0.0
            for i in range(n):
                xi = x[i]
                p = c[n]
                dp = 0.0
                for j in range(n - 1, -1, -1):
                    dp = dp * xi + p
                    p = p * xi + c[j]
                if dp == 0:
                    dp = 1e-300
                w = p / dp
                ssum = 0.0
                for j in range(n):
                    if j != i:
                        ssum = ssum + 1.0 / (xi - x[j])
                denom = 1.0 - w * ssum
                if denom == 0:
                    denom = 1e-300
                delta = w / denom
                x[i] = xi - delta
                absx = _cabs(delta) / (1.0 + _cabs(x[i]))
                if absx > maxdelta:
                    maxdelta = absx
            if maxdelta <= tol:
                done = True
                break

        # Newton polish
        for it in range(2):
            for i in range(n):
                xi = x[i]
                p = c[n]
                dp = 0.0
                for j in range(n - 1, -1, -1):
                    dp = dp * xi + p
                    p = p * xi + c[j]
                if dp == 0:
                    dp = 1e-300
                x[i] = xi - p / dp

        norm = 0.0
        for i in range(n + 1):
            norm += c[i] * c[i]
        norm = sqrt(norm)
        rmax = 0.0
        for i in range(n):
            xi = x[i]
            p = c[n]
            for j in range(n - 1, -1, -1):
                p = p * xi + c[j]
            absx = _cabs(xi)
            grow = 1.0 if absx < 1.0 else pow(absx, <double> n)
            pr = _cabs(p) / (norm * grow)
            if pr > rmax:
                rmax = pr
            roots[s, i] = xi
        resid[s] = rmax
        conv[s] = 1 if done else 0

    return roots_arr, resid_arr, conv_arr.astype(bool)
