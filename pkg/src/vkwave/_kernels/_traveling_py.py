"""Pure-numpy traveling-profile jet fill.

This is the reference implementation of the hot path shared with the
compiled extension: given profile coefficients for

    w(x) = u0 + u1*xi + u2*sin(omega*xi) + u3*cos(omega*xi)
    phi(x) = p0 + p1*xi + p2*xi^2 + p3*xi^3,      xi = x1 - c*x3,

fill the full 4-jets of w and phi at a block of points.  A derivative
with subscript multiplicities (i, j, k) along (x1, x2, x3) equals the
profile derivative of order i + k times (-c)^k, and vanishes whenever
j > 0 because the profile does not depend on x2.
"""

from __future__ import annotations

import numpy as np

from ..indexing import EXPONENTS, JET_SIZE

_SLOT_M = tuple(int(i + k) for i, _, k in EXPONENTS)
_SLOT_K = tuple(int(k) for _, _, k in EXPONENTS)
_SLOT_LIVE = tuple(bool(j == 0) for _, j, _ in EXPONENTS)


def traveling_jet_fill(u, phi, omega, c, pts, out_w, out_phi) -> None:
    """Fill ``out_w``/``out_phi`` (shape (n, 35)) at ``pts`` (shape (n, 3))."""
    xi = pts[:, 0] - c * pts[:, 2]
    s = np.sin(omega * xi)
    co = np.cos(omega * xi)

    w_prof = (
        u[0] + u[1] * xi + u[2] * s + u[3] * co,
        u[1] + omega * (u[2] * co - u[3] * s),
        omega**2 * (-u[2] * s - u[3] * co),
        omega**3 * (-u[2] * co + u[3] * s),
        omega**4 * (u[2] * s + u[3] * co),
    )
    phi_prof = (
        phi[0] + xi * (phi[1] + xi * (phi[2] + xi * phi[3])),
        phi[1] + xi * (2.0 * phi[2] + 3.0 * phi[3] * xi),
        2.0 * phi[2] + 6.0 * phi[3] * xi,
        np.full_like(xi, 6.0 * phi[3]),
        np.zeros_like(xi),
    )
    powc = tuple((-c) ** k for k in range(5))

    for q in range(JET_SIZE):
        if _SLOT_LIVE[q]:
            factor = powc[_SLOT_K[q]]
            out_w[:, q] = w_prof[_SLOT_M[q]] * factor
            out_phi[:, q] = phi_prof[_SLOT_M[q]] * factor
        else:
            out_w[:, q] = 0.0
            out_phi[:, q] = 0.0
