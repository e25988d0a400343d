"""The fourteen conservation laws of the dynamic von Karman plate.

Each law is a pair (density Psi, flux P = (P1, P2)) built from a field
jet such that d Psi/dx3 + dP1/dx1 + dP2/dx2 = 0 on smooth solutions.
The rows correspond to the variational symmetries of the system: shifts
of w and phi, space and time translations, rotation, scaling, rigid
rotations of the deflection, Galilean boosts, and their moments.

Composite rows (scaling, rotation moment, boost moments) are assembled
by calling the constituent rows, so the structural identities between
rows hold exactly by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FrontProximityError, ValidationError
from .fdtools import richardson
from .jets import FieldJet
from .params import PlateParams
from .solutions import Side
from .tensors import (
    Vector2,
    f_vector,
    g_tensor,
    kinetic_energy_density,
    lagrangian_density,
    moment_tensor,
    shear_force,
    strain_energy_density,
)


@dataclass(frozen=True)
class LawId:
    """One row of the conservation-law table: stable index and name."""

    index: int
    name: str


LAWS: tuple[LawId, ...] = (
    LawId(1, "transversal_linear_momentum"),
    LawId(2, "wave_momentum_x1"),
    LawId(3, "wave_momentum_x2"),
    LawId(4, "energy"),
    LawId(5, "scaling"),
    LawId(6, "moment_of_wave_momentum"),
    LawId(7, "angular_momentum_x1"),
    LawId(8, "angular_momentum_x2"),
    LawId(9, "center_of_mass"),
    LawId(10, "galilean_moment_x1"),
    LawId(11, "galilean_moment_x2"),
    LawId(12, "phi_linear_x1"),
    LawId(13, "phi_linear_x2"),
    LawId(14, "compatibility"),
)

_BY_INDEX = {law.index: law for law in LAWS}
_BY_NAME = {law.name: law for law in LAWS}


def law(key) -> LawId:
    """Resolve an index, name, or LawId to the registry entry."""
    if isinstance(key, LawId):
        if _BY_INDEX.get(key.index) != key:
            raise ValidationError(f"unknown law {key!r}")
        return key
    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        try:
            return _BY_INDEX[int(key)]
        except KeyError:
            raise ValidationError(
                f"law index must be 1..14, got {key}"
            ) from None
    if isinstance(key, str):
        try:
            return _BY_NAME[key]
        except KeyError:
            raise ValidationError(
                f"unknown law name {key!r}; valid names: {', '.join(sorted(_BY_NAME))}"
            ) from None
    raise ValidationError(f"law must be an index, name, or LawId, got {key!r}")


@dataclass(frozen=True)
class DensityFlux:
    """Density and in-plane flux of one law at a jet (or jet batch)."""

    density: float | np.ndarray
    flux: Vector2


def _row_1(jet: FieldJet, p: PlateParams):
    q = shear_force(jet, p)
    return p.rho * jet.dw(3), -q.x1, -q.x2


def _row_translation(beta: int, jet: FieldJet, p: PlateParams):
    """Rows 2 and 3: in-plane translation along x^beta."""
    lag = lagrangian_density(jet, p)
    q = shear_force(jet, p)
    f = f_vector(jet, p)
    m = moment_tensor(jet, p)
    g = g_tensor(jet, p)
    wb, phib = jet.dw(beta), jet.dphi(beta)
    wb1, wb2 = jet.dw(beta, 1), jet.dw(beta, 2)
    phib1, phib2 = jet.dphi(beta, 1), jet.dphi(beta, 2)

    psi = -p.rho * wb * jet.dw(3)
    p1 = (lag if beta == 1 else 0.0) + wb * q.x1 + phib * f.x1 \
        - (wb1 * m.c11 + wb2 * m.c12) - (phib1 * g.c11 + phib2 * g.c12)
    p2 = (lag if beta == 2 else 0.0) + wb * q.x2 + phib * f.x2 \
        - (wb1 * m.c12 + wb2 * m.c22) - (phib1 * g.c12 + phib2 * g.c22)
    return psi, p1, p2


def _row_4(jet: FieldJet, p: PlateParams):
    q = shear_force(jet, p)
    f = f_vector(jet, p)
    m = moment_tensor(jet, p)
    g = g_tensor(jet, p)
    w3, phi3 = jet.dw(3), jet.dphi(3)
    w31, w32 = jet.dw(3, 1), jet.dw(3, 2)
    phi31, phi32 = jet.dphi(3, 1), jet.dphi(3, 2)

    psi = kinetic_energy_density(jet, p) + strain_energy_density(jet, p)
    p1 = -w3 * q.x1 - phi3 * f.x1 + w31 * m.c11 + w32 * m.c12 \
        + phi31 * g.c11 + phi32 * g.c12
    p2 = -w3 * q.x2 - phi3 * f.x2 + w31 * m.c12 + w32 * m.c22 \
        + phi31 * g.c12 + phi32 * g.c22
    return psi, p1, p2


def _row_5(jet: FieldJet, p: PlateParams):
    x1, x2, x3 = (jet.point[..., i] for i in range(3))
    psi2, p21, p22 = _row_translation(1, jet, p)
    psi3, p31, p32 = _row_translation(2, jet, p)
    psi4, p41, p42 = _row_4(jet, p)
    m = moment_tensor(jet, p)
    g = g_tensor(jet, p)
    w1, w2 = jet.dw(1), jet.dw(2)
    phi1, phi2 = jet.dphi(1), jet.dphi(2)

    psi = x1 * psi2 + x2 * psi3 - 2.0 * x3 * psi4
    p1 = x1 * p21 + x2 * p31 - 2.0 * x3 * p41 \
        - (w1 * m.c11 + w2 * m.c12) - (phi1 * g.c11 + phi2 * g.c12)
    p2 = x1 * p22 + x2 * p32 - 2.0 * x3 * p42 \
        - (w1 * m.c12 + w2 * m.c22) - (phi1 * g.c12 + phi2 * g.c22)
    return psi, p1, p2


def _row_6(jet: FieldJet, p: PlateParams):
    x1, x2 = jet.point[..., 0], jet.point[..., 1]
    psi2, p21, p22 = _row_translation(1, jet, p)
    psi3, p31, p32 = _row_translation(2, jet, p)
    m = moment_tensor(jet, p)
    g = g_tensor(jet, p)
    w1, w2 = jet.dw(1), jet.dw(2)
    phi1, phi2 = jet.dphi(1), jet.dphi(2)

    # eps_n^{ m} w_{,m} M^{an} expands to w_2 M^{a1} - w_1 M^{a2}
    psi = x2 * psi2 - x1 * psi3
    p1 = x2 * p21 - x1 * p31 + w2 * m.c11 - w1 * m.c12 + phi2 * g.c11 - phi1 * g.c12
    p2 = x2 * p22 - x1 * p32 + w2 * m.c12 - w1 * m.c22 + phi2 * g.c12 - phi1 * g.c22
    return psi, p1, p2


def _row_7(jet: FieldJet, p: PlateParams):
    x1 = jet.point[..., 0]
    q = shear_force(jet, p)
    m = moment_tensor(jet, p)
    w = jet.dw()
    psi = p.rho * x1 * jet.dw(3)
    p1 = m.c11 - x1 * q.x1 + w * jet.dphi(2, 2)
    p2 = m.c12 - x1 * q.x2 - w * jet.dphi(1, 2)
    return psi, p1, p2


def _row_8(jet: FieldJet, p: PlateParams):
    x2 = jet.point[..., 1]
    q = shear_force(jet, p)
    m = moment_tensor(jet, p)
    w = jet.dw()
    psi = p.rho * x2 * jet.dw(3)
    p1 = m.c12 - x2 * q.x1 - w * jet.dphi(1, 2)
    p2 = m.c22 - x2 * q.x2 + w * jet.dphi(1, 1)
    return psi, p1, p2


def _row_9(jet: FieldJet, p: PlateParams):
    x3 = jet.point[..., 2]
    q = shear_force(jet, p)
    psi = p.rho * (x3 * jet.dw(3) - jet.dw())
    return psi, -x3 * q.x1, -x3 * q.x2


def _row_boost_moment(beta: int, jet: FieldJet, p: PlateParams):
    """Rows 10 and 11: x^beta-weighted boost moments."""
    xb = jet.point[..., beta - 1]
    x3 = jet.point[..., 2]
    psi9, _, _ = _row_9(jet, p)
    _, pa1, pa2 = (_row_7 if beta == 1 else _row_8)(jet, p)
    return xb * psi9, x3 * pa1, x3 * pa2


def _row_phi_linear(beta: int, jet: FieldJet, p: PlateParams):
    """Rows 12 and 13: phi shifts linear in x^beta."""
    xb = jet.point[..., beta - 1]
    f = f_vector(jet, p)
    g = g_tensor(jet, p)
    g_col = (g.c11, g.c12) if beta == 1 else (g.c12, g.c22)
    zero = np.zeros_like(xb) if isinstance(xb, np.ndarray) else 0.0
    return zero, xb * f.x1 - g_col[0], xb * f.x2 - g_col[1]


def _row_14(jet: FieldJet, p: PlateParams):
    f = f_vector(jet, p)
    x3 = jet.point[..., 2]
    zero = np.zeros_like(x3) if isinstance(x3, np.ndarray) else 0.0
    return zero, f.x1, f.x2


_ROWS = {
    1: _row_1,
    2: lambda jet, p: _row_translation(1, jet, p),
    3: lambda jet, p: _row_translation(2, jet, p),
    4: _row_4,
    5: _row_5,
    6: _row_6,
    7: _row_7,
    8: _row_8,
    9: _row_9,
    10: lambda jet, p: _row_boost_moment(1, jet, p),
    11: lambda jet, p: _row_boost_moment(2, jet, p),
    12: lambda jet, p: _row_phi_linear(1, jet, p),
    13: lambda jet, p: _row_phi_linear(2, jet, p),
    14: _row_14,
}


def density_flux(law_key, jet: FieldJet, p: PlateParams) -> DensityFlux:
    """Density and flux of one law at a jet; broadcasts over jet batches."""
    entry = law(law_key)
    psi, p1, p2 = _ROWS[entry.index](jet, p)
    return DensityFlux(density=psi, flux=Vector2(x1=p1, x2=p2))


@dataclass(frozen=True)
class DivergenceEstimate:
    """Finite-difference divergence of one law at a point."""

    d_density_dt: float
    d_flux1_dx1: float
    d_flux2_dx2: float

    @property
    def residual(self) -> float:
        return self.d_density_dt + self.d_flux1_dx1 + self.d_flux2_dx2

    @property
    def scale(self) -> float:
        return abs(self.d_density_dt) + abs(self.d_flux1_dx1) + abs(self.d_flux2_dx2)


def _guard_front_distance(field, point: np.ndarray, h: float) -> None:
    front = getattr(field, "front", None)
    if front is None:
        return
    g_val = float(front.value(point))
    grad = np.asarray(front.spatial_gradient(point), dtype=np.float64)
    slope = float(np.hypot(grad[0], grad[1])) + abs(float(front.time_derivative(point)))
    if slope == 0.0:
        return
    distance = abs(g_val) / slope
    if distance <= 4.0 * h:
        raise FrontProximityError(
            f"point {tuple(point)} is {distance:.3e} from the front; "
            f"the stencil needs clearance > {4.0 * h:.3e}"
        )


def conservation_divergence(
    field,
    law_key,
    point,
    p: PlateParams | None = None,
    h: float = 1e-3,
    use_richardson: bool = True,
) -> DivergenceEstimate:
    """FD estimate of (d3 Psi, d1 P1, d2 P2) at an off-front point.

    Differentiates the assembled density and flux through the field's
    analytic jets (central differences, one Richardson level by default).
    """
    if h <= 0:
        raise ValidationError(f"step h must be positive, got {h}")
    entry = law(law_key)
    params = p if p is not None else field.params
    base = np.asarray(point, dtype=np.float64)
    if base.shape != (3,):
        raise ValidationError(f"point must be a 3-vector, got shape {base.shape}")
    _guard_front_distance(field, base, h)

    # component per axis: axis 0 -> P1, axis 1 -> P2, axis 2 -> Psi
    def estimate(step: float) -> np.ndarray:
        pts = np.empty((6, 3))
        for ax in range(3):
            pts[2 * ax] = base
            pts[2 * ax, ax] -= step
            pts[2 * ax + 1] = base
            pts[2 * ax + 1, ax] += step
        df = density_flux(entry, field.jet(pts, Side.AUTO), params)
        comps = (df.flux.x1, df.flux.x2, df.density)
        return np.array(
            [(comps[ax][2 * ax + 1] - comps[ax][2 * ax]) / (2.0 * step) for ax in range(3)]
        )

    est = estimate(h)
    if use_richardson:
        est = richardson(est, estimate(h / 2.0))
    return DivergenceEstimate(
        d_density_dt=float(est[2]), d_flux1_dx1=float(est[0]), d_flux2_dx2=float(est[1])
    )


def conservation_residual(
    field,
    law_key,
    point,
    p: PlateParams | None = None,
    h: float = 1e-3,
    use_richardson: bool = True,
) -> float:
    """FD estimate of d3 Psi + d1 P1 + d2 P2; vanishes on smooth solutions."""
    return conservation_divergence(field, law_key, point, p, h, use_richardson).residual
