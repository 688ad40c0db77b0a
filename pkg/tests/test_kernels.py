import importlib.util

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hexflip import kernels
from hexflip.hyperbolic_core import half_turn, half_turn_product
from strategies import disc_points

HAS_EXT = importlib.util.find_spec("hexflip._ckernels") is not None
needs_ext = pytest.mark.skipif(not HAS_EXT, reason="compiled extension not built")


@given(disc_points(0.9), disc_points(0.9))
def test_half_turn_apply_matches_isometry(p, z):
    assert abs(kernels.half_turn_apply(p, z) - half_turn(p)(z)) < 1e-12


@needs_ext
@given(st.lists(disc_points(0.3), min_size=6, max_size=6),
       st.lists(st.tuples(st.integers(1, 6), st.sampled_from((1, -1))), max_size=24))
def test_apply_word_backends_agree(pts, word):
    idx = [i for i, _ in word]
    sgn = [s for _, s in word]
    try:
        a = kernels.apply_word(pts, idx, sgn, backend="python")
    except (ZeroDivisionError, ValueError, OverflowError):
        return
    if not np.all(np.isfinite(a)) or np.abs(a).max() > 0.99:
        return
    b = kernels.apply_word(pts, idx, sgn, backend="cython")
    assert np.abs(a - b).max() < 1e-10


@needs_ext
@given(st.lists(disc_points(0.1), min_size=1, max_size=40))
def test_half_turn_product_backends_agree(pts):
    a = kernels.half_turn_product(pts, backend="python")
    b = kernels.half_turn_product(pts, backend="cython")
    assert abs(complex(a[0]) - complex(b[0])) < 1e-12
    assert abs(complex(a[1]) - complex(b[1])) < 1e-12


def test_half_turn_product_matches_core():
    pts = [0.1, 0.2j, -0.15 + 0.05j, 0.3 - 0.2j]
    a, b = kernels.half_turn_product(pts, backend="python")
    m = half_turn_product(pts)
    assert abs(a - m.a) < 1e-14 and abs(b - m.b) < 1e-14


@needs_ext
def test_mobius_chain_backends_agree():
    rng = np.random.default_rng(0)
    r = 0.01 * rng.random(256)
    b = r * np.exp(2j * np.pi * rng.random(256))
    a = np.sqrt(1 + np.abs(b) ** 2) * np.exp(1j * rng.random(256))
    x = kernels.mobius_chain(a, b, backend="python")
    y = kernels.mobius_chain(a, b, backend="cython")
    assert np.abs(np.asarray(x) - np.asarray(y)).max() < 1e-12


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.half_turn_product([0.0], backend="fortran")
