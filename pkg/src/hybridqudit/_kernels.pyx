# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops.

Same contracts as :mod:`hybridqudit._pykernels`; the Python module documents
them.
"""
import numpy as np

from libc.math cimport fabs, sqrt


def jacobi_sweeps(double complex[::1, :] a, double complex[::1, :] v,
                  double tol, double floor, int max_sweeps):
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t nv = v.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweep, rotated
    cdef double alpha, beta, gabs, zeta, t, c, s
    cdef double complex gamma, phc, x, y

    for sweep in range(max_sweeps):
        rotated = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for i in range(m):
                    x = a[i, p]
                    y = a[i, q]
                    alpha += x.real * x.real + x.imag * x.imag
                    beta += y.real * y.real + y.imag * y.imag
                    gamma = gamma + x.conjugate() * y
                gabs = sqrt(gamma.real * gamma.real + gamma.imag * gamma.imag)
                if alpha <= floor or beta <= floor or gabs <= tol * sqrt(alpha * beta):
                    continue
                rotated += 1
                phc = gamma.conjugate() / gabs
                zeta = (beta - alpha) / (2.0 * gabs)
                if zeta >= 0:
                    t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = c * t
                for i in range(m):
                    x = a[i, p]
                    y = phc * a[i, q]
                    a[i, p] = c * x - s * y
                    a[i, q] = s * x + c * y
                for i in range(nv):
                    x = v[i, p]
                    y = phc * v[i, q]
                    v[i, p] = c * x - s * y
                    v[i, q] = s * x + c * y
        if rotated == 0:
            return sweep + 1
    return -1


def apply_gate(const double complex[:, ::1] g, const double complex[::1] psi,
               const Py_ssize_t[::1] sub, const Py_ssize_t[::1] rest):
    cdef Py_ssize_t dg = g.shape[0]
    cdef Py_ssize_t nr = rest.shape[0]
    cdef Py_ssize_t r, a, b, base
    cdef double complex acc
    out = np.empty(psi.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    for r in range(nr):
        base = rest[r]
        for a in range(dg):
            acc = 0.0
            for b in range(dg):
                acc = acc + g[a, b] * psi[base + sub[b]]
            o[base + sub[a]] = acc
    return out
