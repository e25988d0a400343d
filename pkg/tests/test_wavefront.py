import math

import numpy as np
import pytest

from vkwave.errors import SingularFrontError, ValidationError
from vkwave.wavefront import (
    CircleFront,
    FrontGeometry,
    LineFront,
    Sym3Tensor,
    front_geometry,
    required_third_amplitude,
    second_jumps_phi,
    second_jumps_w,
    third_jumps_w,
)


def test_line_front_axis_aligned_geometry():
    front = LineFront(2.0, 0.0, 3.0, -1.0)
    # gamma = 2 x1 + 3 t - 1 vanishes at x1 = 0.2 when t = 0.2
    point = (0.2, 7.0, 0.2)
    assert front.value(point) == pytest.approx(0.0, abs=1e-15)
    geo = front_geometry(front, point)
    assert geo.normal == pytest.approx([1.0, 0.0])
    assert geo.tangent == pytest.approx([0.0, 1.0])
    assert geo.speed == pytest.approx(-1.5)
    assert geo.arc_rate == 0.0
    assert front.exact_arc_rate(point) == 0.0
    assert front.spatial_line(0.2) == (2.0, 0.0, pytest.approx(3.0 * 0.2 - 1.0))


def test_line_front_oblique_geometry():
    front = LineFront(1.0, 1.0, 0.0, 0.0)
    geo = front_geometry(front, (0.3, -0.3, 5.0))
    r = 1.0 / math.sqrt(2.0)
    assert geo.normal == pytest.approx([r, r])
    assert geo.tangent == pytest.approx([-r, r])
    assert geo.speed == pytest.approx(0.0)
    assert geo.arc_rate == pytest.approx(0.0, abs=1e-9)


def test_line_front_needs_spatial_dependence():
    with pytest.raises(ValidationError):
        LineFront(0.0, 0.0, 1.0, 0.5)


def test_circle_front_geometry():
    front = CircleFront(1.0, -2.0, 0.5, radial_speed=2.0)
    # radius at t = 0.3 is 0.5 + 2 * 0.3 = 1.1
    point = (2.1, -2.0, 0.3)
    assert front.value(point) == pytest.approx(0.0, abs=1e-15)
    geo = front_geometry(front, point)
    assert geo.normal == pytest.approx([1.0, 0.0])
    assert geo.speed == pytest.approx(2.0)
    assert geo.arc_rate == pytest.approx(1.0 / 1.1, rel=1e-6)
    assert front.exact_arc_rate(point) == pytest.approx(1.0 / 1.1, rel=1e-15)


def test_circle_front_shrinking_speed_sign():
    front = CircleFront(0.0, 0.0, 1.0, radial_speed=-0.5)
    geo = front_geometry(front, (1.0, 0.0, 0.0))
    assert geo.speed == pytest.approx(-0.5)


def test_circle_front_singular_at_center():
    front = CircleFront(0.0, 0.0, 1.0)
    with pytest.raises(SingularFrontError):
        front_geometry(front, (0.0, 0.0, 0.0))


def test_circle_front_validation():
    with pytest.raises(ValidationError):
        CircleFront(0.0, 0.0, 0.0)
    with pytest.raises(ValidationError):
        CircleFront(0.0, 0.0, -1.0)


def test_front_geometry_frame_validation():
    with pytest.raises(ValidationError):
        FrontGeometry(1.0, np.array([1.0, 1.0]), np.array([0.0, 1.0]), 0.0)
    with pytest.raises(ValidationError):
        FrontGeometry(1.0, np.array([1.0, 0.0]), np.array([1.0, 0.0]), 0.0)


@pytest.fixture()
def oblique_geo():
    front = LineFront(3.0, 4.0, 2.0, 0.7)
    # pick a point on the front at t = 0.1: 3 x1 + 4 x2 + 0.9 = 0
    point = (0.5, -0.6, 0.1)
    assert front.value(point) == pytest.approx(0.0, abs=1e-12)
    return front_geometry(front, point)


def test_second_jump_tensors(oblique_geo):
    geo = oblique_geo
    lam = 1.7
    jumps = second_jumps_w(lam, geo)
    n, t, c = geo.normal, geo.tangent, geo.speed
    assert c == pytest.approx(-2.0 / 5.0)
    # contraction recovery and the Hadamard compatibility chain
    assert n @ jumps.spatial @ n == pytest.approx(lam, rel=1e-14)
    assert t @ jumps.spatial @ t == pytest.approx(0.0, abs=1e-14)
    np.testing.assert_allclose(jumps.mixed, -c * (jumps.spatial @ n), rtol=1e-14)
    assert jumps.temporal == pytest.approx(-c * (jumps.mixed @ n), rel=1e-14)
    assert jumps.temporal == pytest.approx(lam * c * c, rel=1e-14)

    mu_jumps = second_jumps_phi(-0.8, geo)
    assert n @ mu_jumps.spatial @ n == pytest.approx(-0.8, rel=1e-14)


def test_third_jump_tensor_contractions(oblique_geo):
    geo = oblique_geo
    star, lam, dlam = 0.9, 1.7, -0.4
    jumps = third_jumps_w(star, lam, dlam, geo)
    n, t = geo.normal, geo.tangent
    third = jumps.third
    assert third.contract(n, n, n) == pytest.approx(star, rel=1e-13)
    assert third.contract(n, n, t) == pytest.approx(dlam, rel=1e-13)
    assert third.contract(t, t, n) == pytest.approx(lam * geo.arc_rate, abs=1e-13)
    assert third.contract(t, t, t) == pytest.approx(0.0, abs=1e-13)
    assert jumps.third_amplitude == star
    assert jumps.arc_derivative == dlam


def test_third_jump_tensor_axis_aligned_exact():
    front = LineFront(1.0, 0.0, -1.3, 0.0)
    geo = front_geometry(front, (1.3, 0.2, 1.0))
    jumps = third_jumps_w(0.9, 1.7, -0.4, geo)
    # n = (1, 0): components reduce to the bare coefficients
    assert jumps.third.component(1, 1, 1) == 0.9
    assert jumps.third.component(1, 1, 2) == pytest.approx(-0.4)
    assert jumps.third.component(1, 2, 2) == 0.0
    assert jumps.third.component(2, 2, 2) == 0.0


def test_sym3tensor_component_symmetry():
    s = Sym3Tensor(1.0, 2.0, 3.0, 4.0)
    assert s.component(1, 2, 1) == s.component(1, 1, 2) == 2.0
    assert s.component(2, 1, 2) == 3.0
    with pytest.raises(IndexError):
        s.component(1, 2, 3)


def test_required_third_amplitude():
    front = CircleFront(0.0, 0.0, 2.0, radial_speed=1.0)
    geo = front_geometry(front, (0.0, 2.0, 0.0))
    assert required_third_amplitude(1.5, geo) == pytest.approx(-1.5 / 2.0, rel=1e-6)

    line_geo = front_geometry(LineFront(1.0, 0.0, -1.0, 0.0), (0.0, 0.0, 0.0))
    assert required_third_amplitude(1.5, line_geo) == 0.0
