"""Regional balance checks over rectangles.

For a conservation-law pair (density Psi, flux P) and a rectangular region
R, a solution should satisfy

    d/dt  int_R Psi dA  +  oint_dR P . n ds  =  0,

including when a discontinuity front crosses R, provided the corresponding
jump condition holds on the front.  When it does not hold, the defect
equals the line integral of C [Psi] - [P^a] n_a along the front segment
inside R, which front_segment_jump_integral computes directly as an
independent oracle.

Quadrature: tensor-product Gauss-Legendre on a cell grid.  Cells cut by a
straight front are clipped into one-sided convex polygons, triangulated,
and integrated with a collapsed-square map, so the integrand is smooth on
every quadrature domain.  Curved fronts fall back to recursive cell
subdivision with per-node side resolution at the finest level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .conservation import LawId, density_flux, law
from .errors import ValidationError
from .params import PlateParams
from .solutions import Side
from .wavefront import front_geometry

_MIN_QUAD_ORDER = 4


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle with quadrature settings.

    quad_order is the Gauss-Legendre order per axis per cell, cells the
    grid the rectangle is divided into, and subdivision_depth the maximum
    recursive refinement applied to cells cut by a curved front.
    """

    x1_min: float
    x1_max: float
    x2_min: float
    x2_max: float
    quad_order: int = 8
    cells: tuple[int, int] = (4, 4)
    subdivision_depth: int = 6

    def __post_init__(self):
        for name in ("x1_min", "x1_max", "x2_min", "x2_max"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ValidationError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not self.x1_min < self.x1_max:
            raise ValidationError("region requires x1_min < x1_max")
        if not self.x2_min < self.x2_max:
            raise ValidationError("region requires x2_min < x2_max")
        if not isinstance(self.quad_order, int) or isinstance(self.quad_order, bool):
            raise ValidationError("quad_order must be an integer")
        if self.quad_order < _MIN_QUAD_ORDER:
            raise ValidationError(f"quad_order must be at least {_MIN_QUAD_ORDER}")
        cells = tuple(self.cells)
        if len(cells) != 2 or any(
            not isinstance(c, int) or isinstance(c, bool) or c < 1 for c in cells
        ):
            raise ValidationError("cells must be a pair of positive integers")
        object.__setattr__(self, "cells", cells)
        if not isinstance(self.subdivision_depth, int) or self.subdivision_depth < 0:
            raise ValidationError("subdivision_depth must be a nonnegative integer")


@dataclass(frozen=True)
class BalanceReport:
    """Result of one regional balance evaluation."""

    law: LawId
    time: float
    density_integral: float
    flux_integral: float
    time_derivative: float
    residual: float
    quadrature_error: float


@lru_cache(maxsize=None)
def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _interval_nodes(a: float, b: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    g, w = _leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * g, half * w


def _law_values(field, entry, pts3, side):
    """Density and flux components of one law at a batch of points."""
    jet = field.jet(pts3) if side is None else field.jet(pts3, side)
    df = density_flux(entry, jet, field.params)
    dens = np.asarray(df.density, dtype=np.float64)
    shape = pts3.shape[:-1]
    return (
        np.broadcast_to(dens, shape),
        np.broadcast_to(np.asarray(df.flux.x1, dtype=np.float64), shape),
        np.broadcast_to(np.asarray(df.flux.x2, dtype=np.float64), shape),
    )


def _density_resolved(field, entry, pts3):
    """Density at points whose side is decided by the front sign (ties go ahead)."""
    front = getattr(field, "front", None)
    if front is None:
        return _law_values(field, entry, pts3, None)[0]
    g = np.asarray(front.value(pts3), dtype=np.float64)
    out = np.empty(pts3.shape[0], dtype=np.float64)
    ahead = g >= 0.0
    for mask, side in ((ahead, Side.AHEAD), (~ahead, Side.BEHIND)):
        if mask.any():
            out[mask] = _law_values(field, entry, pts3[mask], side)[0]
    return out


def _points3(x1, x2, t):
    pts = np.empty((np.size(x1), 3), dtype=np.float64)
    pts[:, 0] = np.ravel(x1)
    pts[:, 1] = np.ravel(x2)
    pts[:, 2] = t
    return pts


def _rect_density(field, entry, xa, xb, ya, yb, t, order, side) -> float:
    xs, wx = _interval_nodes(xa, xb, order)
    ys, wy = _interval_nodes(ya, yb, order)
    x_grid, y_grid = np.meshgrid(xs, ys, indexing="ij")
    pts = _points3(x_grid, y_grid, t)
    if side is None and getattr(field, "front", None) is not None:
        vals = _density_resolved(field, entry, pts)
    else:
        vals = _law_values(field, entry, pts, side)[0]
    return float(np.dot(np.outer(wx, wy).ravel(), vals))


def _dedupe_polygon(poly, tol):
    out = []
    for pt in poly:
        if not out or math.hypot(pt[0] - out[-1][0], pt[1] - out[-1][1]) > tol:
            out.append(pt)
    if len(out) > 1 and math.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= tol:
        out.pop()
    return out


def _clip_halfplane(poly, a, b, c0, keep_nonnegative):
    """Sutherland-Hodgman clip of a convex polygon against a*x + b*y + c0."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] + c0
        fq = a * q[0] + b * q[1] + c0
        pin = fp >= 0.0 if keep_nonnegative else fp <= 0.0
        qin = fq >= 0.0 if keep_nonnegative else fq <= 0.0
        if pin:
            out.append(p)
        if pin != qin:
            s = fp / (fp - fq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def _triangle_density(field, entry, va, vb, vc, t, order, side) -> float:
    two_area = (vb[0] - va[0]) * (vc[1] - va[1]) - (vb[1] - va[1]) * (vc[0] - va[0])
    if abs(two_area) < 1e-300:
        return 0.0
    g, w = _leggauss(order)
    xi = 0.5 * (g + 1.0)
    wxi = 0.5 * w
    xi_g, eta_g = np.meshgrid(xi, xi, indexing="ij")
    # collapsed-square map: smooth on the triangle, jacobian xi * |two_area|
    px = va[0] + xi_g * (vb[0] - va[0]) + xi_g * eta_g * (vc[0] - vb[0])
    py = va[1] + xi_g * (vb[1] - va[1]) + xi_g * eta_g * (vc[1] - vb[1])
    wts = np.outer(wxi, wxi) * xi_g * abs(two_area)
    pts = _points3(px, py, t)
    vals = _law_values(field, entry, pts, side)[0]
    return float(np.dot(wts.ravel(), vals))


def _polygon_density(field, entry, poly, t, order, side, diag) -> float:
    poly = _dedupe_polygon(poly, 1e-14 * diag)
    if len(poly) < 3:
        return 0.0
    total = 0.0
    for i in range(1, len(poly) - 1):
        total += _triangle_density(field, entry, poly[0], poly[i], poly[i + 1], t, order, side)
    return total


def _cell_density(field, entry, xa, xb, ya, yb, t, order, depth) -> float:
    front = getattr(field, "front", None)
    if front is None:
        return _rect_density(field, entry, xa, xb, ya, yb, t, order, None)

    corners = ((xa, ya), (xb, ya), (xb, yb), (xa, yb))
    if front.is_straight:
        a, b, c0 = front.spatial_line(t)
        vals = [a * x + b * y + c0 for x, y in corners]
        if min(vals) >= 0.0:
            return _rect_density(field, entry, xa, xb, ya, yb, t, order, Side.AHEAD)
        if max(vals) <= 0.0:
            return _rect_density(field, entry, xa, xb, ya, yb, t, order, Side.BEHIND)
        diag = math.hypot(xb - xa, yb - ya)
        total = 0.0
        for keep, side in ((True, Side.AHEAD), (False, Side.BEHIND)):
            piece = _clip_halfplane(list(corners), a, b, c0, keep)
            total += _polygon_density(field, entry, piece, t, order, side, diag)
        return total

    xm, ym = 0.5 * (xa + xb), 0.5 * (ya + yb)
    samples = _points3(
        [xa, xm, xb, xa, xm, xb, xa, xm, xb],
        [ya, ya, ya, ym, ym, ym, yb, yb, yb],
        t,
    )
    g = np.asarray(front.value(samples), dtype=np.float64)
    if np.all(g > 0.0):
        return _rect_density(field, entry, xa, xb, ya, yb, t, order, Side.AHEAD)
    if np.all(g < 0.0):
        return _rect_density(field, entry, xa, xb, ya, yb, t, order, Side.BEHIND)
    if depth == 0:
        return _rect_density(field, entry, xa, xb, ya, yb, t, order, None)
    total = 0.0
    for cxa, cxb in ((xa, xm), (xm, xb)):
        for cya, cyb in ((ya, ym), (ym, yb)):
            total += _cell_density(field, entry, cxa, cxb, cya, cyb, t, order, depth - 1)
    return total


def density_integral(field, law_key, region: Region, t: float, quad_order=None) -> float:
    """Integral of the law's density over the region at time t."""
    entry = law(law_key)
    order = region.quad_order if quad_order is None else quad_order
    x_edges = np.linspace(region.x1_min, region.x1_max, region.cells[0] + 1)
    y_edges = np.linspace(region.x2_min, region.x2_max, region.cells[1] + 1)
    total = 0.0
    for i in range(region.cells[0]):
        for j in range(region.cells[1]):
            total += _cell_density(
                field,
                entry,
                float(x_edges[i]),
                float(x_edges[i + 1]),
                float(y_edges[j]),
                float(y_edges[j + 1]),
                t,
                order,
                region.subdivision_depth,
            )
    return total


def _edge_crossings(front, p0, p1, t, length) -> list[float]:
    """Arc-length positions in (0, length) where the front crosses the edge."""
    ux, uy = (p1[0] - p0[0]) / length, (p1[1] - p0[1]) / length

    def gamma_at(s):
        return float(
            front.value(np.array([p0[0] + s * ux, p0[1] + s * uy, t], dtype=np.float64))
        )

    if front.is_straight:
        a, b, c0 = front.spatial_line(t)
        f0 = a * p0[0] + b * p0[1] + c0
        slope = a * ux + b * uy
        line_scale = math.hypot(a, b)
        if abs(slope) <= 1e-14 * line_scale:
            if abs(f0) <= 1e-12 * line_scale * (1.0 + length):
                raise ValidationError(
                    "a region edge lies on the front; shift the region boundary"
                )
            return []
        s = -f0 / slope
        return [s] if 0.0 < s < length else []

    n_scan = 64
    ss = np.linspace(0.0, length, n_scan + 1)
    vals = np.array([gamma_at(s) for s in ss])
    crossings = []
    for k in range(n_scan):
        va, vb = vals[k], vals[k + 1]
        if va == 0.0 or va * vb >= 0.0:
            continue
        lo, hi, flo = ss[k], ss[k + 1], va
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = gamma_at(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm > 0.0) == (flo > 0.0):
                lo, flo = mid, fm
            else:
                hi = mid
        crossings.append(0.5 * (lo + hi))
    return crossings


def _edge_flux(field, entry, p0, p1, normal, t, order, n_chunks) -> float:
    """Integral of P . n over one region edge, split at front crossings."""
    front = getattr(field, "front", None)
    length = math.hypot(p1[0] - p0[0], p1[1] - p0[1])
    ux, uy = (p1[0] - p0[0]) / length, (p1[1] - p0[1]) / length

    breaks = [k * length / n_chunks for k in range(n_chunks + 1)]
    if front is not None:
        breaks.extend(_edge_crossings(front, p0, p1, t, length))
    breaks = sorted(set(breaks))

    total = 0.0
    for sa, sb in zip(breaks[:-1], breaks[1:]):
        if sb - sa <= 1e-15 * length:
            continue
        side = None
        if front is not None:
            sm = 0.5 * (sa + sb)
            g_mid = float(
                front.value(
                    np.array([p0[0] + sm * ux, p0[1] + sm * uy, t], dtype=np.float64)
                )
            )
            side = Side.AHEAD if g_mid >= 0.0 else Side.BEHIND
        ss, ws = _interval_nodes(sa, sb, order)
        pts = _points3(p0[0] + ss * ux, p0[1] + ss * uy, t)
        _, f1, f2 = _law_values(field, entry, pts, side)
        total += float(np.dot(ws, f1 * normal[0] + f2 * normal[1]))
    return total


def boundary_flux_integral(field, law_key, region: Region, t: float, quad_order=None) -> float:
    """Outward flux of the law through the region boundary at time t."""
    entry = law(law_key)
    order = region.quad_order if quad_order is None else quad_order
    x1a, x1b = region.x1_min, region.x1_max
    x2a, x2b = region.x2_min, region.x2_max
    edges = (
        ((x1a, x2a), (x1b, x2a), (0.0, -1.0), region.cells[0]),
        ((x1b, x2a), (x1b, x2b), (1.0, 0.0), region.cells[1]),
        ((x1b, x2b), (x1a, x2b), (0.0, 1.0), region.cells[0]),
        ((x1a, x2b), (x1a, x2a), (-1.0, 0.0), region.cells[1]),
    )
    total = 0.0
    for p0, p1, normal, n_chunks in edges:
        total += _edge_flux(field, entry, p0, p1, normal, t, order, n_chunks)
    return total


def balance_residual(field, law_key, region: Region, t: float, dt=None) -> BalanceReport:
    """Evaluate d/dt(density integral) + boundary flux for one law.

    The time derivative is a central difference with step dt (default
    1e-4 * (1 + |t|)).  quadrature_error estimates the numerical error of
    the residual by repeating both integrals at quad_order - 2.
    """
    entry = law(law_key)
    if dt is None:
        dt = 1e-4 * (1.0 + abs(t))
    if not (isinstance(dt, (int, float)) and math.isfinite(dt) and dt > 0):
        raise ValidationError(f"dt must be a positive finite number, got {dt!r}")

    dens_now = density_integral(field, entry, region, t)
    dens_plus = density_integral(field, entry, region, t + dt)
    dens_minus = density_integral(field, entry, region, t - dt)
    flux = boundary_flux_integral(field, entry, region, t)
    deriv = (dens_plus - dens_minus) / (2.0 * dt)

    low = region.quad_order - 2
    flux_low = boundary_flux_integral(field, entry, region, t, quad_order=low)
    deriv_low = (
        density_integral(field, entry, region, t + dt, quad_order=low)
        - density_integral(field, entry, region, t - dt, quad_order=low)
    ) / (2.0 * dt)
    quad_err = abs(deriv - deriv_low) + abs(flux - flux_low)

    return BalanceReport(
        law=entry,
        time=float(t),
        density_integral=dens_now,
        flux_integral=flux,
        time_derivative=deriv,
        residual=deriv + flux,
        quadrature_error=quad_err,
    )


def fundamental_balances(field, region: Region, t: float, dt=None) -> tuple[BalanceReport, BalanceReport]:
    """Balance reports for the two laws equivalent to the governing equations."""
    return (
        balance_residual(field, 1, region, t, dt),
        balance_residual(field, 14, region, t, dt),
    )


def _segment_inside(region: Region, front, t):
    """Clip the straight front line at time t to the region rectangle."""
    a, b, c0 = front.spatial_line(t)
    norm = math.hypot(a, b)
    px, py = -c0 * a / norm**2, -c0 * b / norm**2
    ux, uy = -b / norm, a / norm
    s_lo, s_hi = -math.inf, math.inf
    for coord, u, lo, hi in (
        (px, ux, region.x1_min, region.x1_max),
        (py, uy, region.x2_min, region.x2_max),
    ):
        if abs(u) < 1e-15:
            if not lo <= coord <= hi:
                return None
            continue
        s1, s2 = (lo - coord) / u, (hi - coord) / u
        s_lo = max(s_lo, min(s1, s2))
        s_hi = min(s_hi, max(s1, s2))
    if not s_lo < s_hi:
        return None
    return (px, py, ux, uy, s_lo, s_hi)


def _circle_arcs_inside(region: Region, front, t, n_scan=512):
    """Angle intervals of the circular front lying inside the rectangle."""
    radius = front.radius + front.radial_speed * t
    if radius <= 0.0:
        return radius, []
    cx, cy = front.center_x1, front.center_x2

    def inside(theta):
        x = cx + radius * math.cos(theta)
        y = cy + radius * math.sin(theta)
        return region.x1_min <= x <= region.x1_max and region.x2_min <= y <= region.x2_max

    thetas = np.linspace(0.0, 2.0 * math.pi, n_scan, endpoint=False)
    flags = [inside(th) for th in thetas]
    if all(flags):
        return radius, [(0.0, 2.0 * math.pi)]
    if not any(flags):
        return radius, []

    def refine(th_out, th_in):
        for _ in range(60):
            mid = 0.5 * (th_out + th_in)
            if inside(mid):
                th_in = mid
            else:
                th_out = mid
        return 0.5 * (th_out + th_in)

    step = 2.0 * math.pi / n_scan
    arcs = []
    start = next(k for k in range(n_scan) if not flags[k])
    k = start
    entry_angle = None
    for _ in range(n_scan):
        k_next = (k + 1) % n_scan
        if not flags[k] and flags[k_next]:
            entry_angle = refine(thetas[k], thetas[k] + step)
        if flags[k] and not flags[k_next] and entry_angle is not None:
            exit_angle = refine(thetas[k] + step, thetas[k])
            if exit_angle < entry_angle:
                exit_angle += 2.0 * math.pi
            arcs.append((entry_angle, exit_angle))
            entry_angle = None
        k = k_next
    return radius, arcs


def _jump_integrand_on_points(field, entry, pts3, absolute=False):
    """C [Psi] - [P . n] per point, or the one-sided magnitude sum."""
    p = field.params
    n_pts = pts3.shape[0]
    df_a = density_flux(entry, field.jet(pts3, Side.AHEAD), p)
    df_b = density_flux(entry, field.jet(pts3, Side.BEHIND), p)
    dens_a = np.broadcast_to(np.asarray(df_a.density, dtype=np.float64), (n_pts,))
    dens_b = np.broadcast_to(np.asarray(df_b.density, dtype=np.float64), (n_pts,))
    p1_a = np.broadcast_to(np.asarray(df_a.flux.x1, dtype=np.float64), (n_pts,))
    p1_b = np.broadcast_to(np.asarray(df_b.flux.x1, dtype=np.float64), (n_pts,))
    p2_a = np.broadcast_to(np.asarray(df_a.flux.x2, dtype=np.float64), (n_pts,))
    p2_b = np.broadcast_to(np.asarray(df_b.flux.x2, dtype=np.float64), (n_pts,))

    if field.front.is_straight:
        geos = [front_geometry(field.front, pts3[0])] * n_pts
    else:
        geos = [front_geometry(field.front, pts3[k]) for k in range(n_pts)]
    speed = np.array([g.speed for g in geos])
    n1 = np.array([g.normal[0] for g in geos])
    n2 = np.array([g.normal[1] for g in geos])

    if absolute:
        return (
            np.abs(speed) * (np.abs(dens_b) + np.abs(dens_a))
            + np.abs(p1_b * n1 + p2_b * n2)
            + np.abs(p1_a * n1 + p2_a * n2)
        )
    return speed * (dens_b - dens_a) - ((p1_b - p1_a) * n1 + (p2_b - p2_a) * n2)


def front_segment_jump_integral(
    field, law_key, region: Region, t: float, quad_order=None, absolute=False
) -> float:
    """Line integral of C [Psi] - [P^a] n_a along the front inside the region.

    This is the independent oracle for the defect of a regional balance:
    when the law's jump condition fails on the front, the balance residual
    equals this integral.  With absolute=True the integrand is replaced by
    its one-sided magnitude sum, giving a scale for relative comparisons.
    """
    entry = law(law_key)
    front = getattr(field, "front", None)
    if front is None:
        raise ValidationError("field has no front; the jump integral is zero only trivially")
    order = region.quad_order if quad_order is None else quad_order

    if front.is_straight:
        seg = _segment_inside(region, front, t)
        if seg is None:
            return 0.0
        px, py, ux, uy, s_lo, s_hi = seg
        ss, ws = _interval_nodes(s_lo, s_hi, order)
        pts = _points3(px + ss * ux, py + ss * uy, t)
        vals = _jump_integrand_on_points(field, entry, pts, absolute)
        return float(np.dot(ws, vals))

    radius, arcs = _circle_arcs_inside(region, front, t)
    total = 0.0
    for th_a, th_b in arcs:
        ths, ws = _interval_nodes(th_a, th_b, max(order, 16))
        pts = _points3(
            front.center_x1 + radius * np.cos(ths),
            front.center_x2 + radius * np.sin(ths),
            t,
        )
        vals = _jump_integrand_on_points(field, entry, pts, absolute)
        total += float(np.dot(ws, vals)) * radius
    return total
