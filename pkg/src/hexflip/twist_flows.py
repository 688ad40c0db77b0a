"""Partition curves, their holonomies and the twist flows about them.

A partition curve splits the six punctures into two triples. Each curve is
stored as a braid word ``beta`` moving its triple to positions 1..3; the
curve itself is ``beta^-1`` applied to the curve around the first three
punctures.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .euclidean_model import EucConfig, lift_to_sextuple, q_gamma
from .hyperbolic_core import IsoClass, MoebiusIso, classify, elliptic_data, half_turn_product, rotate_about
from .sextuple import ROT_WORD, BraidWord, Sextuple, apply_word, half_twist_word

TWO_PI = 2.0 * math.pi


class FlowUndefined(ValueError):
    pass


@dataclass(frozen=True)
class PartitionCurve:
    """Curve ``conjugator^-1 . gamma_123``; ``triple`` is the side moved to positions 1..3."""

    triple: tuple
    conjugator: BraidWord

    @property
    def name(self) -> str:
        return "tri:" + ",".join(map(str, self.triple))

    def partition(self):
        a = frozenset(self.triple)
        return frozenset((a, frozenset(range(1, 7)) - a))


@dataclass(frozen=True)
class RotationNumber:
    value: float

    def __float__(self) -> float:
        return self.value


def _rotation_to_front(triple) -> BraidWord | None:
    """Power of the cyclic rotation bringing a consecutive triple to 1..3."""
    s = set(triple)
    for k in range(6):
        if {((k + j) % 6) + 1 for j in range(3)} == s:
            return BraidWord(ROT_WORD.letters * k)
    return None


def _shortest_positive_word(triple, max_len: int = 10) -> BraidWord:
    """BFS over positive words in L1..L5 moving the labels of ``triple`` to positions 1..3."""
    target = frozenset(triple)
    start = tuple(range(1, 7))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        labels, word = queue.popleft()
        if frozenset(labels[:3]) == target:
            return BraidWord(tuple((i, 1) for i in word))
        if len(word) >= max_len:
            continue
        for i in range(1, 6):
            nxt = list(labels)
            nxt[i - 1], nxt[i] = nxt[i], nxt[i - 1]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + (i,)))
    raise ValueError(f"no word found for {triple}")


def curve_for(triple) -> PartitionCurve:
    triple = tuple(sorted(triple))
    if len(set(triple)) != 3 or not set(triple) <= set(range(1, 7)):
        raise ValueError(f"bad triple {triple}")
    comp = tuple(sorted(set(range(1, 7)) - set(triple)))
    rotations = [(len(w), side, w) for side in (triple, comp)
                 if (w := _rotation_to_front(side)) is not None]
    if rotations:
        _, side, w = min(rotations)
        return PartitionCurve(side, w)
    return PartitionCurve(triple, _shortest_positive_word(triple))


@lru_cache(maxsize=None)
def _all_curves():
    triples = [(1, j, k) for j in range(2, 7) for k in range(j + 1, 7)]
    return tuple(curve_for(t) for t in triples)


ALL_CURVES = _all_curves()
BASE_CURVE = ALL_CURVES[0]


def parse_curve(text: str) -> PartitionCurve:
    """Curve literal ``tri:i,j,k``."""
    kind, _, rest = text.partition(":")
    if kind != "tri":
        raise ValueError(f"unknown curve literal {text!r}")
    return curve_for(tuple(int(x) for x in rest.split(",")))


# --------------------------------------------------------------------------


def holonomy(z: Sextuple, curve: PartitionCurve = BASE_CURVE) -> MoebiusIso:
    """``s_{x3'} s_{x2'} s_{x1'}`` of ``beta . z`` in the fixed lift."""
    zc = apply_word(z, curve.conjugator)
    return half_turn_product([zc[1], zc[2], zc[3]])


def theta(z: Sextuple, curve: PartitionCurve = BASE_CURVE) -> RotationNumber:
    m = holonomy(z, curve)
    if classify(m) is not IsoClass.ELLIPTIC:
        return RotationNumber(0.0)
    return RotationNumber(elliptic_data(m)[1])


def f_gamma(z: Sextuple, curve: PartitionCurve = BASE_CURVE) -> float:
    """Trace of the lifted holonomy of ``curve``."""
    return holonomy(z, curve).trace


def phi_flow(z: Sextuple, curve: PartitionCurve, t: float) -> Sextuple:
    """Rotate the triple of ``curve`` by ``t`` about the fixed point of its holonomy."""
    zc = apply_word(z, curve.conjugator)
    m = half_turn_product([zc[1], zc[2], zc[3]])
    if classify(m) is not IsoClass.ELLIPTIC:
        raise FlowUndefined("holonomy is not elliptic")
    centre, _ = elliptic_data(m)
    r = rotate_about(centre, t)
    moved = Sextuple(tuple(r(p) for p in zc.x[:3]) + zc.x[3:])
    return apply_word(moved, curve.conjugator.inverse())


def half_twist_about(z: Sextuple, curve: PartitionCurve) -> Sextuple:
    """The half-twist move on the triple of ``curve``, conjugated back."""
    w = curve.conjugator + half_twist_word(1) + curve.conjugator.inverse()
    return apply_word(z, w)


def taylor_f_gamma(v: EucConfig, curve: PartitionCurve = BASE_CURVE, ts=(1e-2, 1e-3)):
    """Limit of ``F_gamma(lift(v, t)) / t**2`` as ``t -> 0`` and its sign relative to ``q_gamma``.

    The two ratios are extrapolated linearly in ``t``.
    """
    (t1, t2) = ts
    r1 = f_gamma(lift_to_sextuple(v, t1), curve) / t1 ** 2
    r2 = f_gamma(lift_to_sextuple(v, t2), curve) / t2 ** 2
    limit = (r2 * t1 - r1 * t2) / (t1 - t2)
    qg = q_gamma(v, curve)
    sign = 1 if limit * qg > 0 else -1
    return limit, sign
