# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled traveling-profile jet fill.

Same contract as ``_traveling_py.traveling_jet_fill``; this version walks
the points one at a time with no temporaries, which is what makes the
quadrature and stencil loops cheap.
"""

from libc.math cimport cos, sin

from ..indexing import EXPONENTS, JET_SIZE

cdef int _JET_SIZE = JET_SIZE

cdef int[35] SLOT_M
cdef int[35] SLOT_K
cdef bint[35] SLOT_LIVE

if _JET_SIZE != 35:
    raise ImportError("jet layout changed; recompile tables")

for _q in range(35):
    SLOT_M[_q] = int(EXPONENTS[_q, 0] + EXPONENTS[_q, 2])
    SLOT_K[_q] = int(EXPONENTS[_q, 2])
    SLOT_LIVE[_q] = EXPONENTS[_q, 1] == 0


def traveling_jet_fill(double[::1] u, double[::1] phi, double omega, double c,
                       double[:, ::1] pts, double[:, ::1] out_w,
                       double[:, ::1] out_phi):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t p, q
    cdef double xi, s, co, factor
    cdef double wm[5]
    cdef double pm[5]
    cdef double powc[5]
    cdef double o2 = omega * omega
    cdef double o3 = o2 * omega
    cdef double o4 = o2 * o2

    powc[0] = 1.0
    for q in range(1, 5):
        powc[q] = powc[q - 1] * (-c)

    for p in range(n):
        xi = pts[p, 0] - c * pts[p, 2]
        s = sin(omega * xi)
        co = cos(omega * xi)

        wm[0] = u[0] + u[1] * xi + u[2] * s + u[3] * co
        wm[1] = u[1] + omega * (u[2] * co - u[3] * s)
        wm[2] = o2 * (-u[2] * s - u[3] * co)
        wm[3] = o3 * (-u[2] * co + u[3] * s)
        wm[4] = o4 * (u[2] * s + u[3] * co)

        pm[0] = phi[0] + xi * (phi[1] + xi * (phi[2] + xi * phi[3]))
        pm[1] = phi[1] + xi * (2.0 * phi[2] + 3.0 * phi[3] * xi)
        pm[2] = 2.0 * phi[2] + 6.0 * phi[3] * xi
        pm[3] = 6.0 * phi[3]
        pm[4] = 0.0

        for q in range(35):
            if SLOT_LIVE[q]:
                factor = powc[SLOT_K[q]]
                out_w[p, q] = wm[SLOT_M[q]] * factor
                out_phi[p, q] = pm[SLOT_M[q]] * factor
            else:
                out_w[p, q] = 0.0
                out_phi[p, q] = 0.0
