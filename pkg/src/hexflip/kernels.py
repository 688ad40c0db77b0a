"""Kernel backend selection.

The compiled extension is used when it imports; setting ``HEXFLIP_PURE=1``
forces the pure-Python fallback. Both backends expose the same functions and
agree to rounding.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("HEXFLIP_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"


def half_turn_apply(p, z):
    return _impl.half_turn_apply(complex(p), complex(z))


def apply_word(points, idx, sgn, backend=None):
    impl = _select(backend)
    if impl is _pykernels:
        pts = [complex(p) for p in points]
        impl.apply_word(pts, [int(i) for i in idx], [int(s) for s in sgn])
        return np.array(pts, dtype=np.complex128)
    pts = np.array(points, dtype=np.complex128)
    impl.apply_word(pts, np.ascontiguousarray(idx, dtype=np.int_),
                    np.ascontiguousarray(sgn, dtype=np.int_))
    return pts


def half_turn_product(points, backend=None):
    impl = _select(backend)
    if impl is _pykernels:
        return impl.half_turn_product([complex(p) for p in points])
    return impl.half_turn_product(np.ascontiguousarray(points, dtype=np.complex128))


def mobius_chain(a_seq, b_seq, backend=None):
    impl = _select(backend)
    return impl.mobius_chain(np.ascontiguousarray(a_seq, dtype=np.complex128),
                             np.ascontiguousarray(b_seq, dtype=np.complex128))


def _select(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _pykernels
    if backend == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")
