import numpy as np
import pytest
from hypothesis import given, strategies as st

from hexflip import euclidean_model as em
from hexflip.euclidean_model import EucConfig
from strategies import words

EXAMPLE = EucConfig.of([0, 1, 1 + 1j, 1j, 0, 0])


def configs():
    return st.integers(0, 2**32 - 1).map(lambda s: em.random_config(np.random.default_rng(s)))


def cone_points():
    return st.integers(0, 2**32 - 1).map(lambda s: em.random_cone_point(np.random.default_rng(s)))


def test_example_q_all_routes():
    assert em.q_area(EXAMPLE) == pytest.approx(0.5, abs=1e-15)
    assert em.q_double_sum(EXAMPLE) == pytest.approx(0.5, abs=1e-15)
    assert em.q_symplectic(EXAMPLE) == pytest.approx(0.5, abs=1e-15)
    assert em.to_symplectic_values(EXAMPLE) == (-1, 1j, 1j, 0)


def test_constraint_is_enforced():
    with pytest.raises(em.ConstraintError):
        em.q_area(EucConfig.of([1, 0, 0, 0, 0, 0]))


def test_signature_frozen():
    assert em.signature_of_h() == (2, 2)


def test_pullback_constant_frozen():
    c, dev = em.pullback_ratio()
    assert c == pytest.approx(0.5, abs=1e-9)
    assert dev < 1e-9
    c_det, _ = em.pullback_ratio(pairing="det")
    assert abs(c_det) < 1e-9


@given(configs())
def test_q_routes_agree(v):
    a, b, c = em.q_area(v), em.q_double_sum(v), em.q_symplectic(v)
    assert b == pytest.approx(a, abs=1e-12)
    assert c == pytest.approx(a, abs=1e-12)


@given(configs())
def test_symplectic_values_roundtrip(v):
    back = em.from_symplectic_values(*em.to_symplectic_values(v))
    assert np.allclose(back.array(), v.gauged().array(), atol=1e-12)


@given(configs(), words(10))
def test_q_is_invariant_under_moves(v, w):
    moved = em.euclid_apply_word(v, w)
    scale = 1 + float(np.abs(moved.array()).max()) ** 2
    assert em.q(moved) == pytest.approx(em.q(v), abs=1e-12 * scale)


@given(words(10))
def test_word_matrix_matches_action(w):
    v = em.random_config(np.random.default_rng(len(w)))
    m = em.euclid_word_matrix(w)
    assert np.allclose(m @ v.array(), em.euclid_apply_word(v, w).array(), atol=1e-9)


@given(configs(), st.floats(-3, 3))
def test_psi_flow_preserves_q(v, t):
    assert em.q(em.psi_flow(v, t)) == pytest.approx(em.q(v), abs=1e-10)


@given(configs(), configs())
def test_symplectic_form_is_four_im_h(v, w):
    lhs = em.omega_V(em.u_vector(v), em.u_vector(w))
    assert lhs == pytest.approx(4 * em.h(v, w).imag, abs=1e-10)


@given(st.lists(st.complex_numbers(max_magnitude=3), min_size=6, max_size=6))
def test_cup_and_q_formulas(lam):
    lam = np.array(lam)
    assert em.cup(lam, lam.conj()) == pytest.approx(em.cup_formula(lam), abs=1e-9)
    assert em.q(em.f2(lam)) == pytest.approx(em.q_of_f2_formula(lam), abs=1e-9)


@given(cone_points())
def test_lagrangian_roundtrip(v):
    pt = em.lagrangian_map(v)
    back = em.lagrangian_inverse(pt)
    assert np.abs(back.array() - em.phase_normalize(v).array()).max() < 1e-8


def test_conjugate_has_same_plane_opposite_orientation():
    v = em.random_cone_point(np.random.default_rng(3))
    a = em.lagrangian_map(v)
    b = em.lagrangian_map(EucConfig.of(v.array().conj()))
    assert np.allclose(a.projector(), b.projector(), atol=1e-10)
    assert np.linalg.det(b.basis @ np.linalg.pinv(a.basis)) < 0


def test_f2_kills_the_alternating_kernel():
    for k in em.KERNEL_GENERATORS:
        assert np.abs(em.f2(k).gauged().array()).max() < 1e-15


def test_off_cone_is_rejected():
    with pytest.raises(em.NotLagrangian):
        em.lagrangian_map(EXAMPLE)


def test_sp_generators_are_symplectic():
    assert all(em.is_symplectic(g) for g in em.sp_generators())


def test_distribution_ranks():
    v = em.random_config(np.random.default_rng(11))
    assert em.distribution_rank(v) == {"upstairs": (5, 7), "quotient": (4, 6)}
