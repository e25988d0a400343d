"""Exact solution families and piecewise fields glued along a front.

The governing system for the transverse deflection w and Airy stress
function phi (x3 = time, Delta = in-plane Laplacian) is

    D Delta^2 w - eps^{am} eps^{bn} w_{,ab} phi_{,mn} + rho w_{,33} = 0
    (1/Eh) Delta^2 phi + (1/2) eps^{am} eps^{bn} w_{,ab} w_{,mn} = 0.

Traveling profiles in xi = x1 - c x3 with omega = c sqrt(rho/D),

    w = u0 + u1 xi + u2 sin(omega xi) + u3 cos(omega xi)
    phi = p0 + p1 xi + p2 xi^2 + p3 xi^3,

satisfy both equations identically for any coefficients, which makes
them ideal carriers for discontinuity constructions: gluing two members
of the family along the moving line xi = 0 yields a field solving the
system on each side, with all jump content concentrated on the front.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ._kernels import traveling_jet_fill
from .errors import SideRequiredError, ValidationError
from .indexing import EXPONENTS, JET_SIZE
from .jets import FieldJet
from .params import PlateParams
from .wavefront import Front, LineFront


class Side(enum.Enum):
    """Branch selector for piecewise fields."""

    AHEAD = "ahead"
    BEHIND = "behind"
    AUTO = "auto"


def _as_points(point) -> tuple[np.ndarray, np.ndarray, bool]:
    pts = np.asarray(point, dtype=np.float64)
    if pts.ndim == 0 or pts.shape[-1] != 3:
        raise ValidationError(f"point must have shape (..., 3), got {pts.shape}")
    single = pts.ndim == 1
    flat = np.ascontiguousarray(pts.reshape(-1, 3))
    return pts, flat, single


def _coeff4(name: str, values) -> tuple[float, float, float, float]:
    vals = tuple(float(v) for v in values)
    if len(vals) != 4:
        raise ValidationError(f"{name} must have exactly 4 coefficients, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise ValidationError(f"{name} coefficients must be finite, got {vals}")
    return vals


@dataclass(frozen=True, eq=False)
class InvariantSolution:
    """One traveling-profile solution; exact jets of every order <= 4."""

    u: tuple[float, float, float, float]
    phi: tuple[float, float, float, float]
    wave_speed: float
    params: PlateParams
    omega: float

    front = None

    def jet(self, point, side: Side = Side.AUTO) -> FieldJet:
        pts, flat, single = _as_points(point)
        out_w = np.empty((flat.shape[0], JET_SIZE))
        out_phi = np.empty_like(out_w)
        traveling_jet_fill(
            np.asarray(self.u), np.asarray(self.phi), self.omega, self.wave_speed,
            flat, out_w, out_phi,
        )
        shape = pts.shape[:-1] + (JET_SIZE,)
        if single:
            return FieldJet(pts, out_w[0], out_phi[0])
        return FieldJet(pts, out_w.reshape(shape), out_phi.reshape(shape))


def invariant_solution(u, phi, c: float, params: PlateParams) -> InvariantSolution:
    """Build a traveling-profile solution; requires a nonzero speed c."""
    c = float(c)
    if not math.isfinite(c) or c == 0.0:
        raise ValidationError(f"wave speed c must be finite and nonzero, got {c}")
    omega = c * math.sqrt(params.rho / params.D)
    return InvariantSolution(
        u=_coeff4("u", u), phi=_coeff4("phi", phi), wave_speed=c,
        params=params, omega=omega,
    )


@dataclass(frozen=True, eq=False)
class PolynomialField:
    """Polynomial (w, phi) in (x1, x2, x3); exact jets by falling factorials.

    Not generally a solution of the governing system; used to build
    synthetic fields with prescribed derivative content in tests and
    scenarios (the degree <= 1 w / harmonic phi subfamily is exact).
    """

    w_exponents: np.ndarray
    w_coefficients: np.ndarray
    phi_exponents: np.ndarray
    phi_coefficients: np.ndarray
    params: PlateParams

    front = None

    def _eval(self, exps: np.ndarray, coefs: np.ndarray, flat: np.ndarray) -> np.ndarray:
        out = np.zeros((flat.shape[0], JET_SIZE))
        if coefs.size == 0:
            return out
        for q in range(JET_SIZE):
            slot = EXPONENTS[q]
            sel = np.all(exps >= slot, axis=1)
            if not sel.any():
                continue
            e = exps[sel]
            # falling factorials per axis, then monomial evaluation
            factors = coefs[sel].astype(np.float64).copy()
            vals = np.ones((flat.shape[0], e.shape[0]))
            for ax in range(3):
                s = int(slot[ax])
                for col, n in enumerate(e[:, ax]):
                    n = int(n)
                    factors[col] *= math.perm(n, s)
                    if n - s > 0:
                        vals[:, col] *= flat[:, ax] ** (n - s)
            out[:, q] = vals @ factors
        return out

    def jet(self, point, side: Side = Side.AUTO) -> FieldJet:
        pts, flat, single = _as_points(point)
        out_w = self._eval(self.w_exponents, self.w_coefficients, flat)
        out_phi = self._eval(self.phi_exponents, self.phi_coefficients, flat)
        shape = pts.shape[:-1] + (JET_SIZE,)
        if single:
            return FieldJet(pts, out_w[0], out_phi[0])
        return FieldJet(pts, out_w.reshape(shape), out_phi.reshape(shape))


def _poly_terms(name: str, terms: Mapping[tuple[int, int, int], float] | None):
    exps = []
    coefs = []
    for key, value in (terms or {}).items():
        k = tuple(int(i) for i in key)
        if len(k) != 3 or any(i < 0 for i in k):
            raise ValidationError(
                f"{name} monomial keys must be 3 nonnegative exponents, got {key!r}"
            )
        v = float(value)
        if not math.isfinite(v):
            raise ValidationError(f"{name}[{key!r}] must be finite, got {value!r}")
        exps.append(k)
        coefs.append(v)
    if exps:
        return np.array(exps, dtype=np.int64), np.array(coefs, dtype=np.float64)
    return np.zeros((0, 3), dtype=np.int64), np.zeros(0, dtype=np.float64)


def polynomial_field(
    w: Mapping[tuple[int, int, int], float] | None,
    phi: Mapping[tuple[int, int, int], float] | None,
    params: PlateParams,
) -> PolynomialField:
    """Build a polynomial field from {(i, j, k): coefficient} monomial maps,
    the key meaning coefficient * x1^i * x2^j * x3^k."""
    w_exps, w_coefs = _poly_terms("w", w)
    p_exps, p_coefs = _poly_terms("phi", phi)
    return PolynomialField(w_exps, w_coefs, p_exps, p_coefs, params)


@dataclass(frozen=True, eq=False)
class PiecewiseField:
    """Two branch fields glued along a front: ahead where gamma > 0,
    behind where gamma < 0."""

    ahead: object
    behind: object
    front: Front
    params: PlateParams

    def __post_init__(self) -> None:
        for name, branch in (("ahead", self.ahead), ("behind", self.behind)):
            if getattr(branch, "params", None) != self.params:
                raise ValidationError(f"{name} branch has different plate constants")

    def gamma(self, point):
        return self.front.value(point)

    def jet(self, point, side: Side = Side.AUTO) -> FieldJet:
        if side is Side.AHEAD:
            return self.ahead.jet(point)
        if side is Side.BEHIND:
            return self.behind.jet(point)

        pts, flat, single = _as_points(point)
        g = np.asarray(self.front.value(flat), dtype=np.float64)
        if np.any(g == 0.0):
            raise SideRequiredError(
                "point lies exactly on the front; pass side=Side.AHEAD or Side.BEHIND"
            )
        if single:
            return (self.ahead if g[0] > 0 else self.behind).jet(point)

        out_w = np.empty((flat.shape[0], JET_SIZE))
        out_phi = np.empty_like(out_w)
        for branch, mask in ((self.ahead, g > 0), (self.behind, g < 0)):
            if mask.any():
                j = branch.jet(flat[mask])
                out_w[mask] = j.w
                out_phi[mask] = j.phi
        shape = pts.shape[:-1] + (JET_SIZE,)
        return FieldJet(pts, out_w.reshape(shape), out_phi.reshape(shape))


@dataclass(frozen=True, eq=False)
class AccelerationWave(PiecewiseField):
    """Traveling acceleration wave: ahead profile plus the perturbation

        u_behind = u_ahead + c1 (1 - cos omega xi),   xi < 0
        phi_behind = phi_ahead + c2 xi^2,             xi < 0

    glued along the moving line xi = x1 - c x3 = 0.  Both branches solve
    the governing system; across the front the field and its first
    derivatives are continuous while second derivatives jump with
    normal-normal amplitudes lambda = c1 omega^2 and mu = 2 c2.
    """

    c1: float
    c2: float

    @property
    def wave_speed(self) -> float:
        return self.ahead.wave_speed

    @property
    def omega(self) -> float:
        return self.ahead.omega

    @property
    def lambda_amplitude(self) -> float:
        return self.c1 * self.omega**2

    @property
    def mu_amplitude(self) -> float:
        return 2.0 * self.c2


def acceleration_wave(ahead: InvariantSolution, c1: float, c2: float) -> AccelerationWave:
    """Glue the perturbed profile behind ``ahead``; c1 must be nonzero so
    that the second time derivative of w actually jumps."""
    c1 = float(c1)
    c2 = float(c2)
    if not (math.isfinite(c1) and math.isfinite(c2)):
        raise ValidationError(f"c1 and c2 must be finite, got ({c1}, {c2})")
    if c1 == 0.0:
        raise ValidationError("c1 must be nonzero: [w_{,33}] = c1 omega^2 c^2 would vanish")
    if not isinstance(ahead, InvariantSolution):
        raise ValidationError("ahead branch must be an InvariantSolution")

    u = ahead.u
    p = ahead.phi
    behind = InvariantSolution(
        u=(u[0] + c1, u[1], u[2], u[3] - c1),
        phi=(p[0], p[1], p[2] + c2, p[3]),
        wave_speed=ahead.wave_speed,
        params=ahead.params,
        omega=ahead.omega,
    )
    front = LineFront(1.0, 0.0, -ahead.wave_speed, 0.0)
    return AccelerationWave(
        ahead=ahead, behind=behind, front=front, params=ahead.params, c1=c1, c2=c2
    )


def eval_jet(field, point, side: Side = Side.AUTO) -> FieldJet:
    """Evaluate the 4-jet of any field object at a point (or batch)."""
    return field.jet(point, side)


def pde_residual(jet: FieldJet, p: PlateParams):
    """Left-hand sides of the two governing equations at a jet.

    Returns (r1, r2); both vanish identically on exact solutions.
    """
    w11, w12, w22 = jet.dw(1, 1), jet.dw(1, 2), jet.dw(2, 2)
    p11, p12, p22 = jet.dphi(1, 1), jet.dphi(1, 2), jet.dphi(2, 2)
    bilap_w = jet.dw(1, 1, 1, 1) + 2.0 * jet.dw(1, 1, 2, 2) + jet.dw(2, 2, 2, 2)
    bilap_phi = jet.dphi(1, 1, 1, 1) + 2.0 * jet.dphi(1, 1, 2, 2) + jet.dphi(2, 2, 2, 2)

    coupling = w11 * p22 + w22 * p11 - 2.0 * w12 * p12
    r1 = p.D * bilap_w - coupling + p.rho * jet.dw(3, 3)
    r2 = bilap_phi / p.Eh + (w11 * w22 - w12 * w12)
    return r1, r2


def pde_term_scales(jet: FieldJet, p: PlateParams):
    """Sum of absolute term magnitudes for each equation, for relative
    residual comparisons."""
    w11, w12, w22 = jet.dw(1, 1), jet.dw(1, 2), jet.dw(2, 2)
    p11, p12, p22 = jet.dphi(1, 1), jet.dphi(1, 2), jet.dphi(2, 2)
    bilap_w = jet.dw(1, 1, 1, 1) + 2.0 * jet.dw(1, 1, 2, 2) + jet.dw(2, 2, 2, 2)
    bilap_phi = jet.dphi(1, 1, 1, 1) + 2.0 * jet.dphi(1, 1, 2, 2) + jet.dphi(2, 2, 2, 2)

    s1 = (
        np.abs(p.D * bilap_w)
        + np.abs(w11 * p22) + np.abs(w22 * p11) + 2.0 * np.abs(w12 * p12)
        + np.abs(p.rho * jet.dw(3, 3))
    )
    s2 = np.abs(bilap_phi / p.Eh) + np.abs(w11 * w22) + np.abs(w12 * w12)
    return s1, s2
