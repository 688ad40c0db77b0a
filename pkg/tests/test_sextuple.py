import math

import numpy as np
import pytest
from hypothesis import assume, given

from hexflip.hyperbolic_core import DomainError, IDENTITY, disc_translation, distance, rotate_about
from hexflip.sextuple import (
    ROT_WORD,
    BraidWord,
    ComponentId,
    ConfigTag,
    InvalidSextuple,
    Sextuple,
    act,
    apply_word,
    classify_config,
    component_of,
    construct_par,
    construct_tri,
    cyclic_rot,
    from_genus2_rep,
    half_twist,
    half_twist_word,
    leapfrog,
    normalize,
    sample_random,
    side_lengths,
    size_A,
    size_B,
    surface_relation,
    to_genus2_rep,
    validate,
)
from strategies import seeds, words

SEED7 = Sextuple.of([
    0.30421261541423145 - 0.2292658863757601j,
    0.06471456838243886 + 0.41206283048247033j,
    0.1923468217774784 - 0.19587545986081534j,
    0.016351442945356075 - 0.03406363958100341j,
    0.03889522096929093 + 0.028497325527682006j,
    0.5057627661713814 - 0.5623462791954293j,
])


def test_sample_is_deterministic_and_frozen():
    z = sample_random(7)
    assert z == SEED7
    assert sample_random(7) == z


def test_frozen_sizes_and_class():
    ok, res, sign = validate(SEED7)
    assert ok and res < 1e-13 and sign == -1
    assert size_A(SEED7) == pytest.approx(3.95109224201492, rel=1e-12)
    assert size_B(SEED7) == pytest.approx(2.6678819371668334, rel=1e-12)
    assert classify_config(SEED7).tag is ConfigTag.TRI


def test_sextuple_rejects_wrong_length_and_boundary():
    with pytest.raises(InvalidSextuple):
        Sextuple.of([0, 0, 0])
    with pytest.raises(DomainError):
        Sextuple.of([0, 0, 0, 0, 0, 1.0])


def test_json_roundtrip_is_exact():
    assert Sextuple.from_json(SEED7.to_json()) == SEED7


def test_word_parse_and_inverse():
    w = BraidWord.parse("1 2 -3")
    assert w.letters == ((1, 1), (2, 1), (3, -1))
    assert str(w.inverse()) == "3 -2 -1"
    assert len((w + w.inverse()).reduced()) == 0
    with pytest.raises(ValueError):
        BraidWord(((7, 1),))


def test_leapfrog_moves_the_pair():
    z = SEED7
    z1 = leapfrog(z, 2)
    assert z1[2] == z[3]
    assert z1[1] == z[1] and z1[4] == z[4]
    # the old x2 is reflected through the old x3
    assert distance(z1[3], z[3]) == pytest.approx(distance(z[2], z[3]), rel=1e-12)
    assert distance(z1[3], z[2]) == pytest.approx(2 * distance(z[2], z[3]), rel=1e-12)


def test_rotation_word_is_cyclic_shift():
    z = SEED7
    moved = apply_word(z, ROT_WORD)
    assert np.abs(moved.array() - cyclic_rot(z).array()).max() < 1e-12


def test_half_twist_matches_its_word():
    z = SEED7
    for i in (1, 2, 4):
        a = half_twist(z, i)
        b = apply_word(z, half_twist_word(i))
        assert np.abs(a.array() - b.array()).max() < 1e-12


def _walk(z, w, radius=0.99):
    """Apply ``w`` letter by letter; ``None`` once a point leaves ``radius``."""
    for letter in w:
        try:
            z = apply_word(z, BraidWord((letter,)))
        except DomainError:
            return None
        if max(abs(p) for p in z.x) > radius:
            return None
    return z


@given(seeds, words(12))
def test_word_then_inverse_is_identity(seed, w):
    z = sample_random(seed)
    mid = _walk(z, w)
    assume(mid is not None)
    back = apply_word(mid, w.inverse())
    assert np.abs(back.array() - z.array()).max() < 1e-10


@given(seeds, words(8))
def test_moves_preserve_relation(seed, w):
    z = sample_random(seed)
    z1 = _walk(z, w)
    assume(z1 is not None)
    _, res, _ = validate(z1)
    assert res < 1e-8


@given(seeds)
def test_invariants_are_isometry_invariant(seed):
    z = sample_random(seed)
    g = rotate_about(0.2 - 0.1j, 0.7) @ disc_translation(0.3j)
    gz = act(g, z)
    assert np.allclose(side_lengths(gz), side_lengths(z), atol=1e-9)
    assert np.abs(normalize(gz).array() - normalize(z).array()).max() < 1e-8
    assert classify_config(gz).tag is classify_config(z).tag


@given(seeds)
def test_normalize_fixes_first_point(seed):
    n = normalize(sample_random(seed))
    assert abs(n[1]) < 1e-12
    assert abs(n[2].imag) < 1e-12 and n[2].real > 0


@given(seeds)
def test_genus_two_roundtrip(seed):
    z = sample_random(seed)
    rep = to_genus2_rep(z)
    assert surface_relation(*rep).projective_distance(IDENTITY) < 1e-9
    back = from_genus2_rep(*rep)
    assert np.abs(back.array() - z.array()).max() < 1e-7


def test_construct_par_and_tri():
    rng = np.random.default_rng(0)
    z = construct_par(rng)
    assert classify_config(z).tag is ConfigTag.PAR
    t = construct_tri([0.2, 0.3j, -0.25 - 0.1j], (0.1, -0.05, 0.0))
    assert validate(t)[0]
    assert classify_config(t).tag is ConfigTag.TRI
    assert component_of(t) is ComponentId.X0


def test_singular_and_degenerate_pair():
    assert classify_config(Sextuple.of([0.1] * 6)).tag is ConfigTag.SINGULAR
    z = Sextuple.of([0.0, 0.0, 0.3, 0.3, -0.2, -0.2])
    c = classify_config(z)
    assert c.tag is ConfigTag.DEGENERATE_PAIR and c.pair == 1


def test_cyclic_rot_period():
    assert cyclic_rot(SEED7, 6) == SEED7
    assert math.isclose(size_A(cyclic_rot(SEED7)), size_B(SEED7), rel_tol=1e-12)
