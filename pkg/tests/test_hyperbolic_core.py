import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hexflip.hyperbolic_core import (
    IDENTITY,
    DomainError,
    IsoClass,
    MoebiusIso,
    check_point,
    classify,
    compose,
    delta_invariant,
    delta_invariant_geometric,
    disc_translation,
    distance,
    elliptic_data,
    from_hyperboloid,
    geodesic_through,
    half_turn,
    half_turn_product,
    hyperbolic_data,
    midpoint,
    minkowski,
    project_onto,
    rotate_about,
    to_hyperboloid,
)
from strategies import disc_points


def test_half_turn_at_origin():
    m = half_turn(0)
    assert m.a == pytest.approx(1j)
    assert abs(m.b) == 0.0


def test_half_turn_frozen_value():
    m = half_turn(0.5)
    assert m.a == pytest.approx(5j / 3, abs=1e-15)
    assert m.b == pytest.approx(-4j / 3, abs=1e-15)


def test_distance_frozen():
    assert distance(0, 0.5) == pytest.approx(math.log(3), rel=1e-15)


def test_check_point_rejects_boundary():
    with pytest.raises(DomainError):
        check_point(1.0)
    with pytest.raises(DomainError):
        check_point(complex("nan"))


@given(disc_points())
def test_half_turn_is_involution_fixing_its_centre(p):
    m = half_turn(p)
    assert abs(m(p) - p) < 1e-12
    assert (m @ m).projective_distance(IDENTITY) < 1e-10
    assert m.det == pytest.approx(1.0, abs=1e-10)


@given(disc_points(), disc_points(), disc_points())
def test_isometries_preserve_distance(p, q, c):
    for g in (disc_translation(c), rotate_about(c, 1.3), half_turn(c)):
        assert distance(g(p), g(q)) == pytest.approx(distance(p, q), abs=1e-9)


@given(disc_points(), disc_points())
def test_product_of_two_half_turns_translates_twice_the_distance(p, q):
    d = distance(p, q)
    m = compose(half_turn(q), half_turn(p))
    # below this the trace excess d**2 is under the classification tolerance
    if d < 1e-3:
        return
    assert classify(m) is IsoClass.HYPERBOLIC
    _, length = hyperbolic_data(m)
    assert length == pytest.approx(2 * d, rel=1e-8, abs=1e-9)


@given(disc_points(), st.floats(0.1, 3.0))
def test_rotation_data_roundtrip(c, theta):
    m = rotate_about(c, theta)
    assert classify(m) is IsoClass.ELLIPTIC
    centre, angle = elliptic_data(m)
    assert abs(centre - c) < 1e-8
    assert angle == pytest.approx(theta, abs=1e-8)


@given(disc_points(0.9))
def test_hyperboloid_roundtrip(p):
    x = to_hyperboloid(p)
    assert minkowski(x, x) == pytest.approx(-1.0, rel=1e-10)
    assert abs(from_hyperboloid(x) - p) < 1e-12


@given(disc_points(), disc_points())
def test_midpoint_and_projection(p, q):
    if distance(p, q) < 1e-6:
        return
    m = midpoint(p, q)
    assert distance(p, m) == pytest.approx(distance(q, m), abs=1e-9)
    g = geodesic_through(p, q)
    assert g.contains(m, tol=1e-8)
    assert abs(project_onto(m, g) - m) < 1e-8


def test_three_half_turns_of_a_triangle_compose_to_an_elliptic():
    pts = [0.2 * cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    assert classify(half_turn_product(pts)) is IsoClass.ELLIPTIC


def test_inverse_and_matrix():
    m = MoebiusIso(1.2 + 0.3j, 0.4 - 0.1j).renormalized()
    assert (m @ m.inverse()).projective_distance(IDENTITY) < 1e-14
    assert np.linalg.det(m.matrix()) == pytest.approx(1.0)


@given(disc_points(), disc_points(), disc_points())
def test_trace_of_three_half_turns_is_sinh_sinh(p1, p2, p3):
    if distance(p1, p2) < 1e-6:
        return
    expected = delta_invariant_geometric(p1, p2, p3)
    assert delta_invariant(p1, p2, p3) == pytest.approx(expected, rel=1e-8, abs=1e-10)
