import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hexflip import euclidean_model as em
from hexflip import twist_flows as tf
from hexflip.sextuple import Sextuple, validate

CURVE_TABLE = {
    "tri:1,2,3": "",
    "tri:1,2,4": "3",
    "tri:1,2,5": "4 3",
    "tri:3,4,5": "1 2 3 4 5 1 2 3 4 5",
    "tri:1,3,4": "2 3",
    "tri:1,3,5": "2 4 3",
    "tri:1,3,6": "2 5 4 3",
    "tri:1,4,5": "3 2 4 3",
    "tri:1,4,6": "3 2 5 4 3",
    "tri:2,3,4": "1 2 3 4 5",
}


def lifted():
    return st.integers(0, 2**32 - 1).map(
        lambda s: em.lift_to_sextuple(em.random_cone_point(np.random.default_rng(s)), 0.05))


def test_curve_table_frozen():
    assert {c.name: str(c.conjugator) for c in tf.ALL_CURVES} == CURVE_TABLE
    assert len({c.partition() for c in tf.ALL_CURVES}) == 10


def test_parse_curve():
    assert tf.parse_curve("tri:4,5,6").partition() == tf.parse_curve("tri:1,2,3").partition()
    with pytest.raises(ValueError):
        tf.parse_curve("loop:1,2")
    with pytest.raises(ValueError):
        tf.parse_curve("tri:1,1,2")


def test_singular_holonomy():
    m = tf.holonomy(Sextuple.of([0] * 6))
    assert m.a == pytest.approx(-1j) and abs(m.b) == 0


def test_trace_to_q_ratio_frozen():
    # measured constant of the quadratic term: F_gamma ~ -4 q_gamma t^2
    v = em.random_cone_point(np.random.default_rng(10))
    for c in tf.ALL_CURVES:
        if abs(em.q_gamma(v, c)) < 1e-2:
            continue
        limit, sign = tf.taylor_f_gamma(v, c)
        assert limit / em.q_gamma(v, c) == pytest.approx(-4.0, rel=1e-3)
        assert sign == -1


@given(lifted(), st.sampled_from(tf.ALL_CURVES), st.floats(-3, 3), st.floats(-3, 3))
def test_flow_is_a_one_parameter_group(z, c, s, t):
    a = tf.phi_flow(tf.phi_flow(z, c, s), c, t)
    b = tf.phi_flow(z, c, s + t)
    assert np.abs(a.array() - b.array()).max() < 1e-9
    assert validate(b)[1] < 1e-10


@given(lifted(), st.sampled_from(tf.ALL_CURVES))
def test_flow_period_and_half_twist(z, c):
    full = tf.phi_flow(z, c, 2 * math.pi)
    assert np.abs(full.array() - z.array()).max() < 1e-9
    th = float(tf.theta(z, c))
    twist = tf.half_twist_about(z, c)
    assert np.abs(tf.phi_flow(z, c, th).array() - twist.array()).max() < 1e-9


@given(lifted(), st.sampled_from(tf.ALL_CURVES), st.floats(-3, 3))
def test_flow_preserves_its_own_trace(z, c, t):
    assert tf.f_gamma(tf.phi_flow(z, c, t), c) == pytest.approx(tf.f_gamma(z, c), abs=1e-10)
