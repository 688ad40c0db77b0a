"""Sextuples of points whose half-turns compose to +-Id.

Indices are 1-based and cyclic throughout: the leapfrog move ``L6`` acts on the
pair ``(x6, x1)``. Braid words are applied left to right.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .hyperbolic_core import (
    TOL_CLASS,
    TOL_ID,
    Asymptotic,
    ClassMismatch,
    Crossing,
    Disjoint,
    Geodesic,
    IsoClass,
    MoebiusIso,
    check_point,
    classify,
    commutator,
    commutator_points,
    compose,
    disc_translation,
    distance,
    geodesic_through,
    geodesics_relation,
    half_turn,
    half_turn_product,
    hyperbolic_data,
    minkowski,
    project_onto,
    to_hyperboloid,
    translate_along,
)


class InvalidSextuple(ValueError):
    pass


class ClassificationError(ValueError):
    """Two cross-checks of the trichotomy disagree."""


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Sextuple:
    x: tuple

    def __post_init__(self):
        if len(self.x) != 6:
            raise InvalidSextuple(f"expected 6 points, got {len(self.x)}")
        object.__setattr__(self, "x", tuple(check_point(p) for p in self.x))

    @classmethod
    def of(cls, points) -> "Sextuple":
        return cls(tuple(complex(p) for p in points))

    def __getitem__(self, i: int) -> complex:
        """1-based cyclic access."""
        return self.x[(i - 1) % 6]

    def array(self) -> np.ndarray:
        return np.array(self.x, dtype=np.complex128)

    def to_json(self) -> str:
        pts = [[_f17(p.real), _f17(p.imag)] for p in self.x]
        return json.dumps({"model": "poincare_disc", "points": pts})

    @classmethod
    def from_json(cls, text: str) -> "Sextuple":
        data = json.loads(text)
        if data.get("model") != "poincare_disc":
            raise InvalidSextuple(f"unexpected model {data.get('model')!r}")
        pts = data["points"]
        if len(pts) != 6:
            raise InvalidSextuple("expected six points")
        return cls.of(complex(float(a), float(b)) for a, b in pts)


def _f17(v: float) -> float:
    return float(f"{v:.17g}")


@dataclass(frozen=True)
class BraidWord:
    """Sequence of leapfrog letters ``(i, sign)``, applied left to right."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(i), 1 if s > 0 else -1) for i, s in self.letters)
        for i, _ in letters:
            if not 1 <= i <= 6:
                raise ValueError(f"invalid leapfrog index {i}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + tuple(other.letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def reduced(self) -> "BraidWord":
        out = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return BraidWord(tuple(out))

    @classmethod
    def power(cls, i: int, k: int) -> "BraidWord":
        return cls(((i, 1 if k > 0 else -1),) * abs(int(k)))

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        """Parse ``"1 2 -3"`` (``-3`` is the inverse of ``L3``)."""
        toks = text.replace(",", " ").split()
        return cls(tuple((abs(int(t)), 1 if int(t) > 0 else -1) for t in toks))

    def __str__(self) -> str:
        return " ".join(str(i * s) for i, s in self.letters)


ROT_WORD = BraidWord(((1, 1), (2, 1), (3, 1), (4, 1), (5, 1)))


def half_twist_word(i: int) -> BraidWord:
    j = i % 6 + 1
    return BraidWord(((i, 1), (j, 1), (i, 1)) * 2)


class ConfigTag(enum.Enum):
    SINGULAR = "Singular"
    DEGENERATE_PAIR = "DegeneratePair"
    ALIGNED = "Aligned"
    TRI = "TRI"
    PAR = "PAR"
    SKH = "SKH"
    HEX = "HEX"


@dataclass(frozen=True)
class ConfigClass:
    tag: ConfigTag
    pair: int | None = None

    def __str__(self) -> str:
        if self.tag is ConfigTag.DEGENERATE_PAIR:
            return f"DegeneratePair({self.pair})"
        return self.tag.value


class ComponentId(enum.Enum):
    X0 = "X0"
    XPLUS2 = "Xplus2"
    XMINUS2 = "Xminus2"


# --------------------------------------------------------------------------
# relation and moves


def relation_product(z: Sextuple) -> MoebiusIso:
    return half_turn_product(z.x)


def validate(z: Sextuple, tol: float = TOL_ID):
    """Return ``(ok, residual, sign)`` for the product ``s6 ... s1``."""
    m = relation_product(z)
    plus = max(abs(m.a - 1.0), abs(m.b))
    minus = max(abs(m.a + 1.0), abs(m.b))
    sign = 1 if plus <= minus else -1
    residual = min(plus, minus)
    return residual < tol, residual, sign


def require_valid(z: Sextuple, tol: float = 1e-7) -> None:
    ok, res, _ = validate(z, tol)
    if not ok:
        raise InvalidSextuple(f"relation residual {res:.3e} exceeds {tol:.1e}")


def _check_index(i: int) -> int:
    if not 1 <= int(i) <= 6:
        raise ValueError(f"leapfrog index must be in 1..6, got {i}")
    return int(i)


def leapfrog(z: Sextuple, i: int, sign: int = 1) -> Sextuple:
    i = _check_index(i)
    return apply_word(z, BraidWord(((i, sign),)))


def apply_word(z: Sextuple, w: BraidWord, backend: str | None = None) -> Sextuple:
    if len(w) == 0:
        return z
    idx = [i for i, _ in w.letters]
    sgn = [s for _, s in w.letters]
    return Sextuple(tuple(complex(p) for p in kernels.apply_word(z.x, idx, sgn, backend)))


def cyclic_rot(z: Sextuple, k: int = 1) -> Sextuple:
    """``(x1, ..., x6) -> (x2, ..., x6, x1)``, ``k`` times."""
    k %= 6
    return Sextuple(z.x[k:] + z.x[:k])


def half_twist(z: Sextuple, i: int = 1, times: int = 1) -> Sextuple:
    """Map the triple starting at ``i`` by ``f = s_{i+2} s_{i+1} s_i``, ``times`` times."""
    i = _check_index(i)
    idx = [(i - 1 + k) % 6 for k in range(3)]
    f = triple_holonomy(z, i)
    if times < 0:
        f = f.inverse()
    pts = list(z.x)
    for _ in range(abs(times)):
        for k in idx:
            pts[k] = f(pts[k])
    return Sextuple(tuple(pts))


def triple_holonomy(z: Sextuple, i: int = 1) -> MoebiusIso:
    return half_turn_product([z[i], z[i + 1], z[i + 2]])


# --------------------------------------------------------------------------
# size functionals


def side_lengths(z: Sextuple):
    """``(a12, a23, a34, a45, a56, a61)``."""
    return tuple(distance(z[i], z[i + 1]) for i in range(1, 7))


def size_A(z: Sextuple) -> float:
    a = side_lengths(z)
    return a[0] + a[2] + a[4]


def size_B(z: Sextuple) -> float:
    a = side_lengths(z)
    return a[1] + a[3] + a[5]


def size_F(z: Sextuple) -> float:
    return math.prod(math.cosh(v) for v in side_lengths(z))


# --------------------------------------------------------------------------
# classification


def pair_line(z: Sextuple, i: int) -> Geodesic:
    """Line through ``x_i`` and ``x_{i+1}``, oriented along ``s_{i+1} s_i``."""
    return geodesic_through(z[i], z[i + 1])


def _aligned(z: Sextuple, tol: float) -> bool:
    pts = z.x
    far = max(((p, q) for p in pts for q in pts), key=lambda pq: abs(pq[0] - pq[1]))
    if distance(*far) < tol:
        return True
    g = geodesic_through(*far)
    return all(abs(g.side(p)) < tol for p in pts)


def classify_config(z: Sextuple, tol: float = TOL_CLASS) -> ConfigClass:
    """Trichotomy of the lines D12, D34, D56 with the degenerate cases first."""
    return _classify(act(centering(z), z), tol)


def _classify(z: Sextuple, tol: float) -> ConfigClass:
    d = side_lengths(z)
    if max(distance(z[1], p) for p in z.x) < tol:
        return ConfigClass(ConfigTag.SINGULAR)
    for i in (1, 3, 5):
        if d[i - 1] < tol:
            return ConfigClass(ConfigTag.DEGENERATE_PAIR, i)
    if _aligned(z, tol):
        return ConfigClass(ConfigTag.ALIGNED)
    lines = [pair_line(z, i) for i in (1, 3, 5)]
    rels = [geodesics_relation(lines[0], lines[1], tol),
            geodesics_relation(lines[1], lines[2], tol),
            geodesics_relation(lines[2], lines[0], tol)]
    a12, a34, a56 = d[0], d[2], d[4]
    big = max(a12, a34, a56)
    additive = abs(2.0 * big - (a12 + a34 + a56)) < max(tol, 1e-7) * (1.0 + a12 + a34 + a56)
    if any(isinstance(r, Asymptotic) for r in rels):
        if not additive:
            raise ClassificationError(
                "PAR by ideal endpoints but lengths are not additive; candidates PAR/TRI-or-SKH")
        return ConfigClass(ConfigTag.PAR)
    if all(isinstance(r, Crossing) for r in rels):
        return ConfigClass(ConfigTag.TRI)
    if all(isinstance(r, Disjoint) for r in rels):
        skew = hexagon_is_skew(z)
        if skew and not big > (a12 + a34 + a56 - big) - max(tol, 1e-7) * (1.0 + a12 + a34 + a56):
            raise ClassificationError(
                "skew hexagon test and length inequality disagree; candidates SKH/HEX")
        return ConfigClass(ConfigTag.SKH if skew else ConfigTag.HEX)
    raise ClassificationError(
        "mixed line relations " + ", ".join(type(r).__name__ for r in rels)
        + "; candidates TRI/SKH")


def hexagon_turns(z: Sextuple):
    """Turning signs at the six vertices of the right-angled hexagon.

    The hexagon has sides on D12, H23, D34, H45, D56, H61 (``H`` are common
    perpendiculars) and is traversed along the motions ``s2 s1``, ``s4 s3``,
    ``s6 s5``. Returns the feet ``y1..y6`` and the six signs (+1 = left turn).
    """
    lines = [pair_line(z, i) for i in (1, 3, 5)]
    feet = [None] * 6
    for k in range(3):
        rel = geodesics_relation(lines[k], lines[(k + 1) % 3])
        if not isinstance(rel, Disjoint):
            raise ClassMismatch("paired lines are not pairwise disjoint")
        feet[2 * k + 1] = rel.foot1
        feet[(2 * k + 2) % 6] = rel.foot2
    turns = []
    for v in range(6):
        prev, here, nxt = feet[v - 1], feet[v], feet[(v + 1) % 6]
        # the side into an odd-indexed vertex y_{2k+2} lies on a paired line
        if v % 2 == 1:
            t_in = lines[v // 2].tangent_at(here)
            t_out = geodesic_through(here, nxt).tangent_at(here)
        else:
            t_in = geodesic_through(prev, here).tangent_at(here)
            t_out = lines[v // 2].tangent_at(here)
        turns.append(1 if (t_in.conjugate() * t_out).imag > 0 else -1)
    return feet, turns


def hexagon_is_skew(z: Sextuple) -> bool:
    """A right-angled hexagon is embedded iff it turns the same way at every vertex."""
    _, turns = hexagon_turns(z)
    return len(set(turns)) > 1


def component_of(z: Sextuple, tol: float = TOL_CLASS) -> ComponentId:
    """Connected component: X0 unless the hexagon case, then its orientation."""
    cls = classify_config(z, tol)
    if cls.tag is not ConfigTag.HEX:
        return ComponentId.X0
    _, turns = hexagon_turns(z)
    return ComponentId.XPLUS2 if turns[0] > 0 else ComponentId.XMINUS2


# --------------------------------------------------------------------------
# auxiliary points


@dataclass(frozen=True)
class AuxPoints:
    kind: ConfigTag
    y: tuple
    extras: dict = field(default_factory=dict)

    def __getitem__(self, i: int) -> complex:
        return self.y[(i - 1) % 6]


def _shift(g: Geodesic, p: complex, s: float) -> complex:
    return translate_along(g, s)(p)


def centering(z: Sextuple) -> MoebiusIso:
    """Isometry moving the hyperboloid barycentre of the points to 0."""
    c = sum(to_hyperboloid(p) for p in z.x)
    c = c / math.sqrt(-minkowski(c, c))
    return disc_translation(complex(c[1], c[2]) / (1.0 + c[0])).inverse()


def aux_points(z: Sextuple, tol: float = TOL_CLASS) -> AuxPoints:
    """Points ``y1..y6`` with ``s_{y_{i+1}} s_{y_i} = s_{x_{i+1}} s_{x_i}`` for i = 1, 3, 5.

    Computed in a recentred frame and mapped back.
    """
    g = centering(z)
    aux = _aux_points(act(g, z), tol)
    gi = g.inverse()
    extras = {k: (gi(v) if isinstance(v, complex) else v) for k, v in aux.extras.items()}
    return AuxPoints(aux.kind, tuple(gi(p) for p in aux.y), extras)


def _aux_points(z: Sextuple, tol: float) -> AuxPoints:
    cls = classify_config(z, tol)
    a = side_lengths(z)
    lines = [pair_line(z, i) for i in (1, 3, 5)]
    if cls.tag is ConfigTag.TRI:
        v = [geodesics_relation(lines[k], lines[(k + 1) % 3], tol).point for k in range(3)]
        # v[0] = D12 ^ D34 = y2 = y3, v[1] = y4 = y5, v[2] = y6 = y1
        y = (v[2], v[0], v[0], v[1], v[1], v[2])
        extras = {}
        for k, i in enumerate((1, 3, 5)):
            g, half = lines[k], a[i - 1] / 2.0
            yi, yj = y[i - 1], y[i % 6]
            extras[f"m{i}{i % 6 + 1}"] = _shift(g, yi, half)
            extras[f"u{i}{i % 6 + 1}"] = _shift(g, yi, -half)
            extras[f"v{i}{i % 6 + 1}"] = _shift(g, yj, half)
        return AuxPoints(cls.tag, y, extras)
    if cls.tag is ConfigTag.SKH:
        feet, _ = hexagon_turns(z)
        y = tuple(feet)
        k = max(range(3), key=lambda j: a[2 * j])
        # the longest paired side is crossed by the opposite perpendicular
        opposite = geodesic_through(y[(2 * k + 3) % 6], y[(2 * k + 4) % 6])
        rel = geodesics_relation(lines[k], opposite, tol)
        if not isinstance(rel, Crossing):
            raise ClassificationError("opposite perpendicular does not cross the longest side")
        return AuxPoints(cls.tag, y, {"m": rel.point, "long_pair": 2 * k + 1})
    if cls.tag is ConfigTag.PAR:
        xi = _common_ideal_point(lines, tol)
        y3, y4 = z[3], z[4]
        y2 = _horocycle_foot(xi, y3, lines[0])
        y5 = _horocycle_foot(xi, y4, lines[2])
        y1 = _shift(lines[0], y2, -a[0])
        y6 = _shift(lines[2], y5, a[4])
        return AuxPoints(cls.tag, (y1, y2, y3, y4, y5, y6), {"ideal_point": xi})
    raise ClassMismatch(f"auxiliary points need TRI, PAR or SKH, got {cls}")


def _common_ideal_point(lines, tol):
    best = None
    for e in (lines[0].start, lines[0].end):
        err = max(min(abs(e - g.start), abs(e - g.end)) for g in lines[1:])
        if best is None or err < best[0]:
            best = (err, e)
    return best[1]


def to_upper_half_plane(xi: complex):
    """Isometry from the disc to the upper half-plane sending ``xi`` to infinity."""
    rot = xi.conjugate() / abs(xi)

    def fwd(p):
        q = rot * p
        return 1j * (1 + q) / (1 - q)

    def back(w):
        q = (w - 1j) / (w + 1j)
        return q / rot

    return fwd, back


def _horocycle_foot(xi: complex, p: complex, g: Geodesic) -> complex:
    """Point of ``g`` (a line ending at ``xi``) on the horocycle at ``xi`` through ``p``."""
    fwd, back = to_upper_half_plane(xi)
    wp = fwd(p)
    c = fwd(project_onto(p, g)).real
    return back(complex(c, wp.imag))


def horocyclic_distance(xi: complex, p: complex, g: Geodesic) -> float:
    """Length of the horocyclic arc centred at ``xi`` from ``p`` to the line ``g``."""
    fwd, _ = to_upper_half_plane(xi)
    wp = fwd(p)
    c = fwd(project_onto(p, g)).real
    return abs(wp.real - c) / wp.imag


# --------------------------------------------------------------------------
# genus-two representations and normalization


def to_genus2_rep(z: Sextuple):
    s = [half_turn(p) for p in z.x]
    a1 = compose(s[1], s[0])
    b1 = compose(s[1], s[2])
    a2 = compose(s[4], s[3])
    b2 = compose(s[4], s[5])
    return a1, b1, a2, b2


def surface_relation(a1, b1, a2, b2) -> MoebiusIso:
    """``[A1, B1][A2, B2]`` with ``[A, B] = B^-1 A^-1 B A``."""
    return compose(commutator(a1, b1), commutator(a2, b2))


def from_genus2_rep(a1, b1, a2, b2, tol: float = TOL_CLASS) -> Sextuple:
    if commutator(a1, b1).projective_distance(MoebiusIso(1.0 + 0j, 0j)) < TOL_ID:
        raise ClassMismatch("A1 and B1 commute; remark the generators before inverting")
    x1, x2, x3 = commutator_points(a1, b1, tol)
    x4, x5, x6 = commutator_points(a2, b2, tol)
    z = Sextuple((x1, x2, x3, x4, x5, x6))
    ok, res, _ = validate(z, 1e-7)
    if not ok:
        raise ClassMismatch(f"representation does not come from a sextuple (residual {res:.2e})")
    return z


def act(g: MoebiusIso, z: Sextuple) -> Sextuple:
    return Sextuple(tuple(g(p) for p in z.x))


def normalizing_isometry(z: Sextuple, tol: float = 1e-12) -> MoebiusIso:
    base = z[1]
    for p in z.x[1:]:
        if abs(p - base) > tol:
            t = disc_translation(base).inverse()
            u = t(p)
            rot = MoebiusIso(complex(math.cos(-0.5 * math.atan2(u.imag, u.real)),
                                     math.sin(-0.5 * math.atan2(u.imag, u.real))), 0j)
            return compose(rot, t)
    return disc_translation(base).inverse()


def normalize(z: Sextuple, tol: float = 1e-12) -> Sextuple:
    """Canonical representative of the isometry class.

    The first point goes to 0 and the first point distinct from it goes to the
    positive real axis.
    """
    return act(normalizing_isometry(z, tol), z)


# --------------------------------------------------------------------------
# sampling


class SamplingError(RuntimeError):
    pass


def random_ball_point(rng: np.random.Generator, radius: float) -> complex:
    """Point uniformly distributed (hyperbolic area) in the ball of ``radius`` about 0."""
    u = rng.random()
    r = math.acosh(1.0 + u * (math.cosh(radius) - 1.0))
    theta = 2.0 * math.pi * rng.random()
    return math.tanh(r / 2.0) * complex(math.cos(theta), math.sin(theta))


def complete_from_four(pts) -> Sextuple | None:
    """Complete ``x1..x4`` to a sextuple, or ``None`` if the needed motion is not hyperbolic."""
    g = half_turn_product(pts).inverse()
    if classify(g) is not IsoClass.HYPERBOLIC:
        return None
    axis, length = hyperbolic_data(g)
    x5 = project_onto(0j, axis)
    x6 = translate_along(axis, length / 2.0)(x5)
    return Sextuple(tuple(pts) + (x5, x6))


def sample_random(seed: int, spread: float = 1.0, max_tries: int = 10_000) -> Sextuple:
    if spread <= 0:
        raise ValueError("spread must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        pts = [random_ball_point(rng, spread) for _ in range(4)]
        z = complete_from_four(pts)
        if z is not None:
            return z
    raise SamplingError(f"no hyperbolic completion in {max_tries} draws; increase spread or change seed")


def construct_par(rng: np.random.Generator, scale: float = 1.0, max_tries: int = 1000) -> Sextuple:
    """Sextuple whose three paired lines share an ideal point.

    Built in the upper half-plane with the common point at infinity: the
    paired lines are vertical and the three motions are dilations whose
    composition is the identity.
    """
    for _ in range(max_tries):
        c = np.sort(rng.uniform(-scale, scale, size=3))
        l1 = rng.uniform(-2.0 * scale, 2.0 * scale)
        rhs = c[0] - c[2] - math.exp(-l1) * (c[0] - c[1])
        ratio = rhs / (c[1] - c[2])
        if not ratio > 0 or c[1] - c[0] < 0.05 * scale or c[2] - c[1] < 0.05 * scale:
            continue
        l3 = math.log(ratio)
        l2 = -l1 - l3
        if min(abs(l1), abs(l2), abs(l3)) < 0.02:
            continue
        pts = []
        for ck, lk in zip(c, (l1, l2, l3)):
            u = rng.uniform(-1.0, 1.0) * scale
            w1 = complex(ck, math.exp(u))
            w2 = complex(ck, math.exp(u + lk / 2.0))
            pts.extend([w1, w2])
        theta = rng.uniform(0, 2 * math.pi)
        rot = complex(math.cos(theta), math.sin(theta))
        z = Sextuple(tuple(rot * (w - 1j) / (w + 1j) for w in pts))
        if validate(z, 1e-9)[0]:
            return z
    raise SamplingError("could not construct a PAR configuration")


def construct_tri(vertices, offsets=(0.0, 0.0, 0.0)) -> Sextuple:
    """TRI sextuple from a triangle ``(v1, v2, v3)``.

    ``y1 = y6 = v1``, ``y2 = y3 = v2``, ``y4 = y5 = v3``; each pair is the side
    segment slid along its line by the corresponding offset.
    """
    v1, v2, v3 = (check_point(v) for v in vertices)
    pairs = []
    for (p, q), off in zip(((v1, v2), (v2, v3), (v3, v1)), offsets):
        g = geodesic_through(p, q)
        t = translate_along(g, off)
        pairs.extend([t(p), t(q)])
    return Sextuple(tuple(pairs))
